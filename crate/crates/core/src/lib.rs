//! Exact-arithmetic engine for the Painlevé test on polynomial ordinary
//! differential equations.
//!
//! An equation `w^(n) = F(z, w, w', ..., w^(n-1))` with `F` polynomial is
//! probed for pole-like movable singularities: the Bureau number fixes the
//! typical pole order, the determining polynomial fixes the admissible
//! leading coefficients, and each root spawns a family with its resonance
//! polynomial, resonance set, and Laurent recursion. A battery of
//! necessary conditions — structural checks, the residue identity, the
//! resonance-sum rules, and compatibility at positive resonances —
//! aggregates into a verdict. Everything is computed over Gaussian
//! rationals; numeric root localization is used only behind certified
//! error bounds.

pub mod battery;
pub mod combinatorics;
pub mod dual;
pub mod gauss;
pub mod ode;
pub mod oracle;
pub mod painleve;
pub mod parser;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod series;

pub use battery::{full_verdict, Analysis, AnalysisOptions, CheckResult, Outcome, Verdict};
pub use gauss::GaussRational;
pub use ode::{CoeffPoly, EvaluatedODE, MultiIndex, OdeError, PolynomialODE};
pub use painleve::{
    determining_polynomial, expand_laurent, pole_families, resonance_polynomial, DeterminingPoly,
    LaurentExpansion, PoleFamily, ResonancePoly, ResonanceSet,
};
pub use parser::{parse_equation, render_canonical, ParseError};
pub use poly::Poly;
pub use roots::{find_roots, Ball, RootQ, RootValue};
pub use series::Series;
