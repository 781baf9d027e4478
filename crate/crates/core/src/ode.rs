//! Equation representation and structural analysis.
//!
//! An equation of order `n` is stored in the normalized form
//! `w^(n) = sum_chi a_chi(z) * prod_j (w^(j))^chi_j`, where each multi-index
//! `chi = (chi_0, ..., chi_(n-1))` collects the exponents of `w, w', ...,
//! w^(n-1)` in one term and `a_chi` is an exact polynomial in `z`.
//!
//! From the nonlinear terms this module derives the structural data driving
//! everything downstream: the Bureau number `s` (the candidate pole order,
//! an exact rational), the set of dominant terms, their top degree, and the
//! evaluation of all coefficients at a generic base point `z0`.

use crate::gauss::GaussRational;
use crate::poly::Poly;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Polynomial in `z` with exact complex-rational coefficients.
pub type CoeffPoly = Poly<GaussRational>;

/// Exponent vector of one product term: entry `j` is the exponent of
/// `w^(j)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiIndex {
    // ordered by (total degree, exponent vector) via the derived impls:
    // degree is compared first because it is the leading field
    degree: u32,
    exps: Vec<u32>,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        MultiIndex { degree, exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Total degree `|chi|`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Weight `nu(chi) = sum_j j * chi_j`.
    pub fn weight(&self) -> i64 {
        self.exps.iter().enumerate().map(|(j, &e)| j as i64 * e as i64).sum()
    }

    /// The pattern `(1,0,...,0,1)`: one factor `w`, one factor `w^(n-1)`.
    /// For `n = 1` both slots coincide, giving `(2)`.
    pub fn pattern_a(n: usize) -> Self {
        let mut exps = vec![0u32; n];
        exps[0] += 1;
        exps[n - 1] += 1;
        MultiIndex::new(exps)
    }

    /// The pattern `(1,0,...,0,1,0)`: one factor `w`, one factor `w^(n-2)`.
    /// For `n = 2` both slots coincide, giving `(2,0)`; undefined for `n = 1`.
    pub fn pattern_b(n: usize) -> Option<Self> {
        if n < 2 {
            return None;
        }
        let mut exps = vec![0u32; n];
        exps[0] += 1;
        exps[n - 2] += 1;
        Some(MultiIndex::new(exps))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OdeError {
    /// No term of degree two or more: the dominant-balance analysis does
    /// not apply.
    LinearEquation,
    /// A coefficient polynomial vanishes at the requested base point.
    ExcludedPoint(MultiIndex),
    /// The base-point probe sequence was exhausted.
    NoBasePoint,
    /// A term's exponent vector does not match the equation order.
    TermLengthMismatch { expected: usize, got: usize },
    /// Order zero equations are not representable.
    InvalidOrder,
}

impl fmt::Display for OdeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OdeError::LinearEquation => {
                write!(f, "equation has no nonlinear term; the analysis requires one")
            }
            OdeError::ExcludedPoint(chi) => {
                write!(f, "coefficient of term {chi} vanishes at the chosen base point")
            }
            OdeError::NoBasePoint => write!(f, "no admissible base point found in the probe sequence"),
            OdeError::TermLengthMismatch { expected, got } => {
                write!(f, "term exponent vector has length {got}, expected {expected}")
            }
            OdeError::InvalidOrder => write!(f, "equation order must be at least 1"),
        }
    }
}

impl std::error::Error for OdeError {}

/// Normalized equation `w^(n) = sum a_chi(z) * prod (w^(j))^chi_j`.
#[derive(Clone, PartialEq, Debug)]
pub struct PolynomialODE {
    order: usize,
    terms: BTreeMap<MultiIndex, CoeffPoly>,
}

/// Dominant-balance data with the pattern coefficients still polynomial in
/// `z` (no base point chosen yet).
#[derive(Clone, Debug)]
pub struct LeadingShape {
    pub bureau: BigRational,
    pub dominant: BTreeSet<MultiIndex>,
    pub top_degree: u32,
    pub coeff_a: CoeffPoly,
    pub coeff_b: CoeffPoly,
}

/// Dominant-balance data frozen at a base point.
#[derive(Clone, Debug)]
pub struct LeadingData {
    pub bureau: BigRational,
    pub dominant: BTreeSet<MultiIndex>,
    pub top_degree: u32,
    pub coeff_a: GaussRational,
    pub coeff_b: GaussRational,
}

/// Equation with every coefficient frozen at a base point `z0`. The
/// `shifted` polynomials give each coefficient re-expanded around `z0`
/// (i.e. `a_chi(z0 + t)` as a polynomial in `t`), which is what the local
/// series work consumes; the constant term of each is the entry in `values`.
#[derive(Clone, Debug)]
pub struct EvaluatedODE {
    pub order: usize,
    pub z0: GaussRational,
    pub values: BTreeMap<MultiIndex, GaussRational>,
    pub shifted: BTreeMap<MultiIndex, CoeffPoly>,
    pub leading: LeadingData,
}

impl PolynomialODE {
    pub fn new(
        order: usize,
        terms: BTreeMap<MultiIndex, CoeffPoly>,
    ) -> Result<Self, OdeError> {
        if order == 0 {
            return Err(OdeError::InvalidOrder);
        }
        for chi in terms.keys() {
            if chi.len() != order {
                return Err(OdeError::TermLengthMismatch { expected: order, got: chi.len() });
            }
        }
        let terms = terms.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        Ok(PolynomialODE { order, terms })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, CoeffPoly> {
        &self.terms
    }

    fn nonlinear_terms(&self) -> impl Iterator<Item = (&MultiIndex, &CoeffPoly)> {
        self.terms.iter().filter(|(chi, _)| chi.degree() > 1)
    }

    /// The Bureau number: `min (n - nu(chi)) / (|chi| - 1)` over nonlinear
    /// terms. Determines the candidate pole order; values other than 1 and 2
    /// are possible and are classified later.
    pub fn bureau_number(&self) -> Result<BigRational, OdeError> {
        let n = self.order as i64;
        self.nonlinear_terms()
            .map(|(chi, _)| {
                BigRational::new((n - chi.weight()).into(), (chi.degree() as i64 - 1).into())
            })
            .min()
            .ok_or(OdeError::LinearEquation)
    }

    /// Dominant terms: the nonlinear terms attaining the Bureau number,
    /// with their top degree and the two sum-rule pattern coefficients.
    pub fn leading_shape(&self) -> Result<LeadingShape, OdeError> {
        let bureau = self.bureau_number()?;
        let n = self.order as i64;
        let dominant: BTreeSet<MultiIndex> = self
            .nonlinear_terms()
            .filter(|(chi, _)| {
                let ratio =
                    BigRational::new((n - chi.weight()).into(), (chi.degree() as i64 - 1).into());
                ratio == bureau
            })
            .map(|(chi, _)| chi.clone())
            .collect();
        let top_degree = dominant.iter().map(|chi| chi.degree()).max().unwrap();
        let coeff_at = |pattern: Option<MultiIndex>| {
            pattern
                .and_then(|p| self.terms.get(&p).cloned())
                .unwrap_or_else(Poly::zero)
        };
        Ok(LeadingShape {
            bureau,
            dominant,
            top_degree,
            coeff_a: coeff_at(Some(MultiIndex::pattern_a(self.order))),
            coeff_b: coeff_at(MultiIndex::pattern_b(self.order)),
        })
    }

    /// First point in the probe sequence `0, 1, -1, 2, -2, ...` at which no
    /// term's coefficient polynomial vanishes.
    pub fn choose_base_point(&self) -> Result<GaussRational, OdeError> {
        for k in 0..1000i64 {
            let candidate = if k == 0 {
                0
            } else if k % 2 == 1 {
                (k + 1) / 2
            } else {
                -k / 2
            };
            let z0 = GaussRational::from_int(candidate);
            if self.terms.values().all(|a| !a.eval(&z0).is_zero()) {
                return Ok(z0);
            }
        }
        Err(OdeError::NoBasePoint)
    }

    /// Freezes every coefficient at `z0`. Rejects any point where some
    /// coefficient vanishes, identifying the offending term.
    pub fn evaluate_at(&self, z0: &GaussRational) -> Result<EvaluatedODE, OdeError> {
        let mut values = BTreeMap::new();
        let mut shifted = BTreeMap::new();
        for (chi, a) in &self.terms {
            let v = a.eval(z0);
            if v.is_zero() {
                return Err(OdeError::ExcludedPoint(chi.clone()));
            }
            shifted.insert(chi.clone(), a.taylor_shift(z0));
            values.insert(chi.clone(), v);
        }
        let shape = self.leading_shape()?;
        let leading = LeadingData {
            bureau: shape.bureau,
            dominant: shape.dominant,
            top_degree: shape.top_degree,
            coeff_a: shape.coeff_a.eval(z0),
            coeff_b: shape.coeff_b.eval(z0),
        };
        Ok(EvaluatedODE { order: self.order, z0: z0.clone(), values, shifted, leading })
    }

    /// The image of the equation under `w -> lambda * w`: each coefficient
    /// is multiplied by `lambda^(|chi| - 1)`.
    pub fn scale_dependent(&self, lambda: &GaussRational) -> PolynomialODE {
        assert!(!lambda.is_zero(), "scaling by zero");
        let terms = self
            .terms
            .iter()
            .map(|(chi, a)| {
                let factor = if chi.degree() == 0 {
                    lambda.recip()
                } else {
                    lambda.pow(chi.degree() - 1)
                };
                (chi.clone(), a.scaled(&factor))
            })
            .collect();
        PolynomialODE { order: self.order, terms }
    }
}

/// True when the Bureau number is a strictly positive integer, the regime
/// in which the pole-order bookkeeping applies. The integer is returned.
pub fn integral_bureau(bureau: &BigRational) -> Option<u32> {
    if bureau.is_integer() && bureau.is_positive() {
        use num_traits::ToPrimitive;
        bureau.numer().to_u32()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn c(v: i64) -> CoeffPoly {
        Poly::constant(GaussRational::from_int(v))
    }

    fn crat(p: i64, q: i64) -> CoeffPoly {
        Poly::constant(GaussRational::from_rational(BigRational::new(p.into(), q.into())))
    }

    /// a(z) = z
    fn zpoly() -> CoeffPoly {
        Poly::x()
    }

    fn mk(order: usize, terms: Vec<(Vec<u32>, CoeffPoly)>) -> PolynomialODE {
        let map = terms.into_iter().map(|(e, a)| (MultiIndex::new(e), a)).collect();
        PolynomialODE::new(order, map).unwrap()
    }

    /// w[4] = -3*w*w[2] + 4*w[1]^2
    fn bureau_eq() -> PolynomialODE {
        mk(4, vec![(vec![1, 0, 1, 0], c(-3)), (vec![0, 2, 0, 0], c(4))])
    }

    #[test]
    fn bureau_number_examples() {
        assert_eq!(bureau_eq().bureau_number().unwrap(), BigRational::from_integer(2.into()));

        // w[3] = w[2]*w - 2*w[1]^2
        let e =
            mk(3, vec![(vec![1, 0, 1], c(1)), (vec![0, 2, 0], c(-2))]);
        assert_eq!(e.bureau_number().unwrap(), BigRational::one());

        // w[2] = 2*w^3 + z*w: the linear term is excluded from the min
        let e = mk(2, vec![(vec![3, 0], c(2)), (vec![1, 0], zpoly())]);
        assert_eq!(e.bureau_number().unwrap(), BigRational::one());

        // w[2] = w^4 gives a non-integer Bureau number
        let e = mk(2, vec![(vec![4, 0], c(1))]);
        assert_eq!(e.bureau_number().unwrap(), BigRational::new(2.into(), 3.into()));

        let linear = mk(2, vec![(vec![1, 0], zpoly())]);
        assert_eq!(linear.bureau_number(), Err(OdeError::LinearEquation));
    }

    #[test]
    fn dominant_terms_examples() {
        let shape = bureau_eq().leading_shape().unwrap();
        let expect: BTreeSet<_> =
            [MultiIndex::new(vec![1, 0, 1, 0]), MultiIndex::new(vec![0, 2, 0, 0])].into();
        assert_eq!(shape.dominant, expect);
        assert_eq!(shape.top_degree, 2);

        // w[2] = 2*w^3 + z*w + 1/2: only the cubic term is dominant
        let e = mk(
            2,
            vec![(vec![3, 0], c(2)), (vec![1, 0], zpoly()), (vec![0, 0], crat(1, 2))],
        );
        let shape = e.leading_shape().unwrap();
        assert_eq!(shape.dominant, [MultiIndex::new(vec![3, 0])].into());
        assert_eq!(shape.top_degree, 3);

        // w[4] = 10*w^2*w[2] + 10*w*w[1]^2 - 6*w^5 + z*w: all three
        // nonlinear terms are dominant
        let e = mk(
            4,
            vec![
                (vec![2, 0, 1, 0], c(10)),
                (vec![1, 2, 0, 0], c(10)),
                (vec![5, 0, 0, 0], c(-6)),
                (vec![1, 0, 0, 0], zpoly()),
            ],
        );
        let shape = e.leading_shape().unwrap();
        assert_eq!(shape.dominant.len(), 3);
        assert_eq!(shape.top_degree, 5);
        assert_eq!(shape.bureau, BigRational::one());
    }

    #[test]
    fn dominant_ratio_is_exact_on_members() {
        let e = bureau_eq();
        let shape = e.leading_shape().unwrap();
        let n = e.order() as i64;
        for chi in &shape.dominant {
            let ratio = BigRational::new(
                (n - chi.weight()).into(),
                (chi.degree() as i64 - 1).into(),
            );
            assert_eq!(ratio, shape.bureau);
        }
    }

    #[test]
    fn base_point_selection() {
        // constant coefficients: 0 is fine
        assert_eq!(bureau_eq().choose_base_point().unwrap(), GaussRational::from_int(0));

        // z*w coefficient kills 0, so 1 is chosen
        let e = mk(2, vec![(vec![3, 0], c(2)), (vec![1, 0], zpoly())]);
        assert_eq!(e.choose_base_point().unwrap(), GaussRational::from_int(1));

        // (z-1)(z-2) does not vanish at 0
        let f = Poly::from_coeffs(vec![
            GaussRational::from_int(2),
            GaussRational::from_int(-3),
            GaussRational::from_int(1),
        ]);
        let e = mk(2, vec![(vec![2, 0], f), (vec![3, 0], c(1))]);
        assert_eq!(e.choose_base_point().unwrap(), GaussRational::from_int(0));
    }

    #[test]
    fn evaluation_freezes_coefficients() {
        let ev = bureau_eq().evaluate_at(&GaussRational::from_int(0)).unwrap();
        assert_eq!(ev.values[&MultiIndex::new(vec![1, 0, 1, 0])], GaussRational::from_int(-3));
        assert_eq!(ev.values[&MultiIndex::new(vec![0, 2, 0, 0])], GaussRational::from_int(4));

        let e = mk(2, vec![(vec![3, 0], c(2)), (vec![1, 0], zpoly())]);
        let ev = e.evaluate_at(&GaussRational::from_int(1)).unwrap();
        assert_eq!(ev.values[&MultiIndex::new(vec![1, 0])], GaussRational::from_int(1));

        assert_eq!(
            e.evaluate_at(&GaussRational::from_int(0)).unwrap_err(),
            OdeError::ExcludedPoint(MultiIndex::new(vec![1, 0]))
        );
    }

    #[test]
    fn shifted_coefficients_recentre_at_z0() {
        // a(z) = z evaluated around z0 = 5 becomes 5 + t
        let e = mk(2, vec![(vec![3, 0], c(2)), (vec![1, 0], zpoly())]);
        let ev = e.evaluate_at(&GaussRational::from_int(5)).unwrap();
        let shifted = &ev.shifted[&MultiIndex::new(vec![1, 0])];
        assert_eq!(shifted.coeff(0), GaussRational::from_int(5));
        assert_eq!(shifted.coeff(1), GaussRational::from_int(1));
    }

    #[test]
    fn scaling_preserves_structure() {
        let e = mk(
            2,
            vec![(vec![3, 0], c(2)), (vec![1, 0], zpoly()), (vec![0, 0], crat(1, 2))],
        );
        let lam = GaussRational::from_rational(BigRational::new(2.into(), 5.into()));
        let scaled = e.scale_dependent(&lam);
        assert_eq!(scaled.bureau_number(), e.bureau_number());
        assert_eq!(
            scaled.leading_shape().unwrap().dominant,
            e.leading_shape().unwrap().dominant
        );
        // cubic coefficient gains lambda^2, linear is unchanged,
        // constant gains lambda^(-1)
        assert_eq!(
            scaled.terms()[&MultiIndex::new(vec![3, 0])].coeff(0),
            GaussRational::from_int(2) * lam.pow(2)
        );
        assert_eq!(scaled.terms()[&MultiIndex::new(vec![1, 0])], zpoly());
        assert_eq!(
            scaled.terms()[&MultiIndex::new(vec![0, 0])].coeff(0),
            GaussRational::from_rational(BigRational::new(5.into(), 4.into()))
        );
    }

    #[test]
    fn construction_validation() {
        let bad = PolynomialODE::new(
            2,
            [(MultiIndex::new(vec![1, 0, 0]), c(1))].into(),
        );
        assert_eq!(bad.unwrap_err(), OdeError::TermLengthMismatch { expected: 2, got: 3 });
        assert_eq!(
            PolynomialODE::new(0, BTreeMap::new()).unwrap_err(),
            OdeError::InvalidOrder
        );
        // zero coefficients are dropped
        let e = PolynomialODE::new(
            1,
            [(MultiIndex::new(vec![2]), Poly::zero()), (MultiIndex::new(vec![3]), c(1))].into(),
        )
        .unwrap();
        assert_eq!(e.terms().len(), 1);
    }

    #[test]
    fn multi_index_order_and_display() {
        let a = MultiIndex::new(vec![1, 0, 1, 0]);
        let b = MultiIndex::new(vec![0, 2, 0, 0]);
        let c3 = MultiIndex::new(vec![3, 0, 0, 0]);
        // same degree: lexicographic on the exponent vector
        assert!(b < a);
        // degree dominates
        assert!(a < c3);
        assert_eq!(a.to_string(), "(1,0,1,0)");
        assert_eq!(a.degree(), 2);
        assert_eq!(a.weight(), 2);
    }

    #[test]
    fn integral_bureau_classification() {
        assert_eq!(integral_bureau(&BigRational::from_integer(2.into())), Some(2));
        assert_eq!(integral_bureau(&BigRational::new(2.into(), 3.into())), None);
        assert_eq!(integral_bureau(&BigRational::from_integer((-1).into())), None);
        assert_eq!(integral_bureau(&BigRational::zero()), None);
    }
}
