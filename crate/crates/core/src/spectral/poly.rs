//! Exact characteristic-type polynomials whose largest roots are the radii
//! of the extremal families, and bisection root finding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilySpec;

/// Which radius a polynomial describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusKind {
    Rho,
    Q,
}

/// Identifies a polynomial and the family whose radius it encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolyTag {
    /// `ρ(M_{n,n}^{n-k,2})`, quartic.
    BalancedRhoM,
    /// `q(M_{n,n}^{n-k,2})`, quadratic.
    BalancedQM,
    /// `q(N_{n,n}^{k-2,1})`, quadratic.
    BalancedQN,
    /// `ρ(M_{n,n-1}^{n-k-1,k-p})`, quartic.
    NearlyRhoF,
    /// `ρ(M_{n,n-1}^{k-p,n-k-1})`, quartic.
    NearlyRhoG,
    /// The `g` quartic with its constant term exactly as originally
    /// published, `(n-k+1)(n-k+p)k(k-p)`; kept to document the mismatch.
    NearlyRhoGAsPublished,
    /// `ρ(M_{n,n-1}^{n-k,k-p-1})`, quartic (`k >= p+2`).
    NearlyRhoH,
    /// `q(M_{n,n-1}^{n-k-1,k-p})`, cubic.
    NearlyQF,
    /// `q(M_{n,n-1}^{k-p,n-k-1})`, cubic.
    NearlyQG,
    /// `q(M_{n,n-1}^{n-k,k-p-1})`, cubic (`k >= p+2`).
    NearlyQH,
}

impl PolyTag {
    pub const ALL: [PolyTag; 10] = [
        PolyTag::BalancedRhoM,
        PolyTag::BalancedQM,
        PolyTag::BalancedQN,
        PolyTag::NearlyRhoF,
        PolyTag::NearlyRhoG,
        PolyTag::NearlyRhoGAsPublished,
        PolyTag::NearlyRhoH,
        PolyTag::NearlyQF,
        PolyTag::NearlyQG,
        PolyTag::NearlyQH,
    ];

    pub fn kind(self) -> RadiusKind {
        use PolyTag::*;
        match self {
            BalancedRhoM | NearlyRhoF | NearlyRhoG | NearlyRhoGAsPublished | NearlyRhoH => {
                RadiusKind::Rho
            }
            BalancedQM | BalancedQN | NearlyQF | NearlyQG | NearlyQH => RadiusKind::Q,
        }
    }

    pub fn balanced(self) -> bool {
        matches!(
            self,
            PolyTag::BalancedRhoM | PolyTag::BalancedQM | PolyTag::BalancedQN
        )
    }

    /// Checks the parameter range in which the polynomial is claimed.
    /// The balanced polynomials ignore `p`.
    pub fn check_range(self, n: usize, k: usize, p: usize) -> Result<()> {
        let fail = |msg: &str| Err(Error::InvalidFamilyParams(format!("{self:?}: {msg}")));
        if self.balanced() {
            if k < 2 {
                return fail("requires k >= 2");
            }
            if n < k + 1 {
                return fail("requires n >= k+1");
            }
            return Ok(());
        }
        let need = if matches!(self, PolyTag::NearlyRhoH | PolyTag::NearlyQH) {
            p + 2
        } else {
            p + 1
        };
        if k < need {
            return fail(&format!("requires k >= p+{}", need - p));
        }
        if n + p < 2 * k + 2 {
            return fail("requires n >= 2k-p+2");
        }
        Ok(())
    }

    /// The family member whose radius is the largest root.
    pub fn family(self, n: usize, k: usize, p: usize) -> Result<FamilySpec> {
        self.check_range(n, k, p)?;
        use PolyTag::*;
        Ok(match self {
            BalancedRhoM | BalancedQM => FamilySpec::M {
                n,
                m: n,
                s: n - k,
                t: 2,
            },
            BalancedQN => FamilySpec::N1 { n, p: k - 2 },
            NearlyRhoF | NearlyQF => FamilySpec::M {
                n,
                m: n - 1,
                s: n - k - 1,
                t: k - p,
            },
            NearlyRhoG | NearlyRhoGAsPublished | NearlyQG => FamilySpec::M {
                n,
                m: n - 1,
                s: k - p,
                t: n - k - 1,
            },
            NearlyRhoH | NearlyQH => FamilySpec::M {
                n,
                m: n - 1,
                s: n - k,
                t: k - p - 1,
            },
        })
    }
}

/// A monic polynomial with exact integer coefficients, highest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPoly {
    pub tag: PolyTag,
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub coefficients: Vec<i128>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn eval_exact(&self, x: i128) -> i128 {
        self.coefficients.iter().fold(0i128, |acc, &c| acc * x + c)
    }

    /// An interval that contains the largest root and no other root, taken
    /// from subgraph and supergraph radius bounds of the family.
    pub fn bracket(&self) -> (f64, f64) {
        let (n, k, p) = (self.n as f64, self.k as f64, self.p as f64);
        use PolyTag::*;
        match self.tag {
            BalancedRhoM => ((n * (n - 2.0)).sqrt(), n),
            BalancedQM | BalancedQN => (2.0 * n - 2.0, 2.0 * n),
            NearlyRhoF => ((n * (n - k + p - 1.0)).sqrt(), (n * (n - 1.0)).sqrt()),
            NearlyRhoG | NearlyRhoGAsPublished => (
                ((n - k + p) * (n - 1.0)).max(n * k).sqrt(),
                (n * (n - 1.0)).sqrt(),
            ),
            NearlyRhoH => ((n * (n - k + p)).sqrt(), (n * (n - 1.0)).sqrt()),
            NearlyQF => (2.0 * n - k + p - 1.0, 2.0 * n - 1.0),
            NearlyQG => ((2.0 * n - k + p - 1.0).max(n + k), 2.0 * n - 1.0),
            NearlyQH => (2.0 * n - k + p, 2.0 * n - 1.0),
        }
    }

    /// Largest root located by bisection on [`CharPoly::bracket`].
    pub fn largest_root(&self, tol: f64) -> Result<f64> {
        largest_root(self, self.bracket(), tol)
    }
}

/// Builds the polynomial for `tag` at `(n, k, p)`.
pub fn char_poly(tag: PolyTag, n: usize, k: usize, p: usize) -> Result<CharPoly> {
    tag.check_range(n, k, p)?;
    let (n, k, p) = (n as i128, k as i128, p as i128);
    use PolyTag::*;
    let coefficients = match tag {
        BalancedRhoM => vec![1, 0, -(n * n - 2 * n + 2 * k), 0, 2 * k * (n - k) * (n - 2)],
        BalancedQM => vec![1, -(2 * n + k - 2), 2 * k * n - 4 * k],
        BalancedQN => vec![1, -(2 * n + k - 1), 2 * k * n + 2 * n - 4 * k],
        NearlyRhoF => vec![
            1,
            0,
            -(n * n - (k - p + 1) * n + (k + 1) * (k - p)),
            0,
            (n - k - 1) * (n - k + p - 1) * (k + 1) * (k - p),
        ],
        NearlyRhoG => vec![
            1,
            0,
            -(n * n - (k - p + 1) * n + (k + 1) * (k - p)),
            0,
            (n - k - 1) * (n - k + p) * k * (k - p),
        ],
        NearlyRhoGAsPublished => vec![
            1,
            0,
            -(n * n - (k - p + 1) * n + (k + 1) * (k - p)),
            0,
            (n - k + 1) * (n - k + p) * k * (k - p),
        ],
        NearlyRhoH => vec![
            1,
            0,
            -(n * n - (k - p) * n + k * (k - p - 1)),
            0,
            (n - k) * (n - k + p) * k * (k - p - 1),
        ],
        NearlyQF => vec![
            1,
            -(3 * n + p - 1),
            2 * n * n + (2 * k + p) * n - (2 * k + 1) * (k - p + 1),
            -(2 * n - 1) * (n - k + p - 1) * (k + 1),
        ],
        NearlyQG => vec![
            1,
            -(3 * n + p - 1),
            2 * n * n + (2 * k + p - 1) * n - k * (2 * k - 2 * p + 1),
            -(2 * n - 1) * (n - k + p) * k,
        ],
        NearlyQH => vec![
            1,
            -(3 * n + p - 1),
            2 * n * n + (2 * k + p - 2) * n - (2 * k - 1) * (k - p),
            -(2 * n - 1) * (n - k + p) * k,
        ],
    };
    Ok(CharPoly {
        tag,
        n: n as usize,
        k: k as usize,
        p: p as usize,
        coefficients,
    })
}

/// Bisection for a root of `poly` in `[lo, hi]`.
///
/// An endpoint that is an exact root is returned as is; otherwise the values
/// at the endpoints must have opposite signs.
pub fn largest_root(poly: &CharPoly, bracket: (f64, f64), tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if !(tol > 0.0) || !(lo <= hi) {
        return Err(Error::InvalidArgument(format!(
            "bad bisection input: bracket ({lo}, {hi}), tol {tol}"
        )));
    }
    let (flo, fhi) = (poly.eval(lo), poly.eval(hi));
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo == 0.0 {
        return Ok(lo);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::BracketError { lo, hi });
    }
    let lo_sign = flo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = poly.eval(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
