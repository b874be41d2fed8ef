//! Leading-order boundary expansion assembled from the boundary data
//! (v₁, v₂, v₃) and the three scattering values.
//!
//! Six components carry leading terms: the harmonic (4,0)-form line with
//! exponents 3 ± 6i, and five scalar-driven lines (the two trace parts, the
//! mixed tensor, and the (1,3)/(0,4) form parts) sharing the exponent pairs
//! of the λ = 16 and λ = 40 scalar-sector roots. Trace components carry the
//! fixed multipliers 7 and 4. Operator prefixes are opaque bookkeeping tags;
//! the sphere operators are never applied.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polynomials::GaussianRational;
use crate::roots::SpecialRoots;
use crate::sectors::{SectorPolynomial, Star6Sign};

/// Residual threshold certifying an exponent as a sector-polynomial root.
pub const RESIDUAL_CERT_TOL: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum ExpansionError {
    #[error("delta must lie in (0, 1), got {0}")]
    BadDelta(f64),
    #[error("scattering value s{index} is not unimodular: |s| = {modulus}")]
    NonUnimodularScattering { index: usize, modulus: f64 },
}

/// Expansion components, in display order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    H40,
    TrHK,
    TrSK,
    K11,
    H13,
    H04,
}

impl Component {
    pub const ALL: [Component; 6] = [
        Component::H40,
        Component::TrHK,
        Component::TrSK,
        Component::K11,
        Component::H13,
        Component::H04,
    ];

    /// Fixed symbolic operator prefix of the component's line.
    pub fn operator_tag(self) -> &'static str {
        match self {
            Component::H40 => "dx/x∧",
            Component::TrHK => "7 δ_S",
            Component::TrSK => "4 δ_S",
            Component::K11 => "d_H δ_S",
            Component::H13 => "d_H ∗_S",
            Component::H04 => "d_S ∗_S",
        }
    }

    /// Numeric multiplier folded into the coefficients (the 7/4 trace ratio).
    fn multiplier(self) -> f64 {
        match self {
            Component::TrHK => 7.0,
            Component::TrSK => 4.0,
            _ => 1.0,
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Component::H40 => "H_(4,0)",
            Component::TrHK => "Tr_H(k)",
            Component::TrSK => "Tr_S(k)",
            Component::K11 => "k_(1,1)",
            Component::H13 => "H_(1,3)",
            Component::H04 => "H_(0,4)",
        }
    }
}

/// Which boundary datum a term comes from, and in which direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TermSource {
    #[serde(rename = "v1")]
    V1Out,
    #[serde(rename = "S1(v1)")]
    V1In,
    #[serde(rename = "v2")]
    V2Out,
    #[serde(rename = "S2(v2)")]
    V2In,
    #[serde(rename = "v3")]
    V3Out,
    #[serde(rename = "S3(v3)")]
    V3In,
}

impl TermSource {
    pub fn symbol(self) -> &'static str {
        match self {
            TermSource::V1Out => "v1",
            TermSource::V1In => "S1(v1)",
            TermSource::V2Out => "v2",
            TermSource::V2In => "S2(v2)",
            TermSource::V3Out => "v3",
            TermSource::V3In => "S3(v3)",
        }
    }
}

/// One leading term: component line, opaque operator prefix, boundary
/// exponent, and complex amplitude.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTerm {
    pub component: Component,
    pub operator_tag: String,
    pub exponent_re: f64,
    pub exponent_im: f64,
    pub coefficient_re: f64,
    pub coefficient_im: f64,
    pub symbol: TermSource,
}

impl ExpansionTerm {
    pub fn exponent(&self) -> Complex64 {
        Complex64::new(self.exponent_re, self.exponent_im)
    }

    pub fn coefficient(&self) -> Complex64 {
        Complex64::new(self.coefficient_re, self.coefficient_im)
    }
}

/// The assembled leading-order expansion; everything not listed is
/// O(x^{3+δ}).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionSpec {
    pub delta: f64,
    pub terms: Vec<ExpansionTerm>,
}

/// One boundary datum: a symbolic label and a complex amplitude.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryEntry {
    pub label: String,
    pub amplitude_re: f64,
    pub amplitude_im: f64,
}

impl BoundaryEntry {
    pub fn new(label: &str, amplitude: Complex64) -> Self {
        Self {
            label: label.to_string(),
            amplitude_re: amplitude.re,
            amplitude_im: amplitude.im,
        }
    }

    pub fn amplitude(&self) -> Complex64 {
        Complex64::new(self.amplitude_re, self.amplitude_im)
    }

    pub fn is_zero(&self) -> bool {
        self.amplitude_re == 0.0 && self.amplitude_im == 0.0
    }
}

/// Boundary data (v₁, v₂, v₃): v₁ is a ∗₆-eigen 3-form on 𝕊⁶, v₂ and v₃
/// are functions tensored with the closed eigenforms at λ = 16 and λ = 40.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryData {
    pub v1_star6: Star6Sign,
    pub v1: BoundaryEntry,
    /// Eigenform tag λ = 16.
    pub v2: BoundaryEntry,
    /// Eigenform tag λ = 40.
    pub v3: BoundaryEntry,
}

impl BoundaryData {
    pub fn zero() -> Self {
        Self {
            v1_star6: Star6Sign::PlusI,
            v1: BoundaryEntry::new("v1", Complex64::ZERO),
            v2: BoundaryEntry::new("v2", Complex64::ZERO),
            v3: BoundaryEntry::new("v3", Complex64::ZERO),
        }
    }

    pub fn with_amplitudes(v1: Complex64, v2: Complex64, v3: Complex64) -> Self {
        Self {
            v1_star6: Star6Sign::PlusI,
            v1: BoundaryEntry::new("v1", v1),
            v2: BoundaryEntry::new("v2", v2),
            v3: BoundaryEntry::new("v3", v3),
        }
    }
}

fn check_unimodular(index: usize, s: Complex64) -> Result<(), ExpansionError> {
    let modulus = s.norm();
    if (modulus - 1.0).abs() > 1e-8 {
        return Err(ExpansionError::NonUnimodularScattering { index, modulus });
    }
    Ok(())
}

/// Assemble the six-line leading expansion. `s1`, `s2`, `s3` are the
/// scattering values multiplying the incoming amplitudes; each populated
/// datum contributes an outgoing term at θᵢ⁺ and an incoming term at
/// θᵢ⁻ = 6 − θᵢ⁺.
pub fn build_expansion(
    data: &BoundaryData,
    s1: Complex64,
    s2: Complex64,
    s3: Complex64,
    delta: f64,
) -> Result<ExpansionSpec, ExpansionError> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(ExpansionError::BadDelta(delta));
    }
    check_unimodular(1, s1)?;
    check_unimodular(2, s2)?;
    check_unimodular(3, s3)?;

    let special = SpecialRoots::compute();
    let mut terms = Vec::new();

    if !data.v1.is_zero() {
        let a = data.v1.amplitude();
        let theta1 = special.theta1;
        push_pair(
            &mut terms,
            Component::H40,
            theta1,
            a,
            s1 * a,
            TermSource::V1Out,
            TermSource::V1In,
        );
    }
    for component in [
        Component::TrHK,
        Component::TrSK,
        Component::K11,
        Component::H13,
        Component::H04,
    ] {
        let m = component.multiplier();
        if !data.v2.is_zero() {
            let a = data.v2.amplitude();
            push_pair(
                &mut terms,
                component,
                special.theta2,
                m * a,
                m * (s2 * a),
                TermSource::V2Out,
                TermSource::V2In,
            );
        }
        if !data.v3.is_zero() {
            let a = data.v3.amplitude();
            push_pair(
                &mut terms,
                component,
                special.theta3,
                m * a,
                m * (s3 * a),
                TermSource::V3Out,
                TermSource::V3In,
            );
        }
    }
    Ok(ExpansionSpec { delta, terms })
}

fn push_pair(
    terms: &mut Vec<ExpansionTerm>,
    component: Component,
    theta_plus: Complex64,
    out_coeff: Complex64,
    in_coeff: Complex64,
    out_source: TermSource,
    in_source: TermSource,
) {
    let theta_minus = Complex64::new(6.0, 0.0) - theta_plus;
    terms.push(ExpansionTerm {
        component,
        operator_tag: component.operator_tag().to_string(),
        exponent_re: theta_plus.re,
        exponent_im: theta_plus.im,
        coefficient_re: out_coeff.re,
        coefficient_im: out_coeff.im,
        symbol: out_source,
    });
    terms.push(ExpansionTerm {
        component,
        operator_tag: component.operator_tag().to_string(),
        exponent_re: theta_minus.re,
        exponent_im: theta_minus.im,
        coefficient_re: in_coeff.re,
        coefficient_im: in_coeff.im,
        symbol: in_source,
    });
}

/// Residual of one term against the candidate sector polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermResidual {
    pub component: Component,
    pub exponent_re: f64,
    pub exponent_im: f64,
    /// min over the candidates of the exact |p(exponent)|.
    pub residual: f64,
    pub certified: bool,
}

/// Evaluate each candidate polynomial exactly at every term exponent; a term
/// is certified when some candidate vanishes there to within
/// [`RESIDUAL_CERT_TOL`]. This is the finite-dimensional surrogate for the
/// leading part being annihilated up to O(x^{3+δ}).
pub fn residual_order(
    spec: &ExpansionSpec,
    sector_polys: &[SectorPolynomial],
) -> Vec<TermResidual> {
    spec.terms
        .iter()
        .map(|t| {
            let z = GaussianRational::from_complex_f64(t.exponent());
            let residual = sector_polys
                .iter()
                .map(|sp| sp.poly.eval_exact(&z).magnitude())
                .fold(f64::INFINITY, f64::min);
            TermResidual {
                component: t.component,
                exponent_re: t.exponent_re,
                exponent_im: t.exponent_im,
                residual,
                certified: residual <= RESIDUAL_CERT_TOL,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Json,
}

/// Deterministic rendering. Text mode mirrors the component-per-line layout
/// with symbolic amplitudes; JSON carries the numeric data (17 significant
/// digits, see the report module).
pub fn render(spec: &ExpansionSpec, format: RenderFormat) -> String {
    match format {
        RenderFormat::Json => crate::report::to_json_pretty_17(spec),
        RenderFormat::Text => render_text(spec),
    }
}

fn render_text(spec: &ExpansionSpec) -> String {
    if spec.terms.is_empty() {
        return "all components O(x^{3+δ})\n".to_string();
    }
    let mut out = String::new();
    for component in Component::ALL {
        let terms: Vec<&ExpansionTerm> = spec
            .terms
            .iter()
            .filter(|t| t.component == component)
            .collect();
        if terms.is_empty() {
            continue;
        }
        let inner = terms
            .iter()
            .map(|t| format!("{} x^{{{}}}", t.symbol.symbol(), fmt_complex(t.exponent())))
            .collect::<Vec<_>>()
            .join(" + ");
        out.push_str(&format!(
            "{:<8} = {} ({}) + O(x^{{3+δ}})\n",
            component.display_name(),
            component.operator_tag(),
            inner
        ));
    }
    out.push_str("all other components O(x^{3+δ})\n");
    out
}

/// "3+6i", "3-2.776574i": integer parts bare, otherwise six decimals.
fn fmt_complex(z: Complex64) -> String {
    let re = fmt_f64(z.re);
    if z.im == 0.0 {
        return re;
    }
    let sign = if z.im < 0.0 { "-" } else { "+" };
    format!("{re}{sign}{}i", fmt_f64(z.im.abs()))
}

fn fmt_f64(x: f64) -> String {
    if x == x.round() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        let s = format!("{x:.6}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sectors::{indicial_poly, SectorId};

    fn unit() -> Complex64 {
        Complex64::ONE
    }

    #[test]
    fn v1_only_populates_h40() {
        let data = BoundaryData::with_amplitudes(unit(), Complex64::ZERO, Complex64::ZERO);
        let spec = build_expansion(&data, unit(), unit(), unit(), 0.5).unwrap();
        assert_eq!(spec.terms.len(), 2);
        assert!(spec.terms.iter().all(|t| t.component == Component::H40));
        let exps: Vec<Complex64> = spec.terms.iter().map(|t| t.exponent()).collect();
        assert!(exps.contains(&Complex64::new(3.0, 6.0)));
        assert!(exps.contains(&Complex64::new(3.0, -6.0)));
    }

    #[test]
    fn v2_only_populates_five_lines_with_trace_ratio() {
        let a = Complex64::new(0.3, -1.7);
        let data = BoundaryData::with_amplitudes(Complex64::ZERO, a, Complex64::ZERO);
        let s2 = Complex64::new(0.6, 0.8);
        let spec = build_expansion(&data, unit(), s2, unit(), 0.5).unwrap();
        assert_eq!(spec.terms.len(), 10);
        let components: std::collections::BTreeSet<Component> =
            spec.terms.iter().map(|t| t.component).collect();
        assert!(!components.contains(&Component::H40));
        assert_eq!(components.len(), 5);
        // exact 7/4 coefficient ratio: 4·TrH == 7·TrS componentwise
        let coeff = |c: Component, src: TermSource| {
            spec.terms
                .iter()
                .find(|t| t.component == c && t.symbol == src)
                .unwrap()
                .coefficient()
        };
        for src in [TermSource::V2Out, TermSource::V2In] {
            let trh = coeff(Component::TrHK, src);
            let trs = coeff(Component::TrSK, src);
            assert_eq!(trh * 4.0, trs * 7.0);
        }
    }

    #[test]
    fn all_zero_is_pure_remainder() {
        let spec = build_expansion(&BoundaryData::zero(), unit(), unit(), unit(), 0.5).unwrap();
        assert!(spec.terms.is_empty());
        assert_eq!(
            render(&spec, RenderFormat::Text),
            "all components O(x^{3+δ})\n"
        );
    }

    #[test]
    fn bad_delta_rejected() {
        for delta in [0.0, 1.0, -0.3, 2.0] {
            assert_eq!(
                build_expansion(&BoundaryData::zero(), unit(), unit(), unit(), delta),
                Err(ExpansionError::BadDelta(delta))
            );
        }
    }

    #[test]
    fn non_unimodular_scattering_rejected() {
        let err = build_expansion(
            &BoundaryData::zero(),
            Complex64::new(0.5, 0.0),
            unit(),
            unit(),
            0.5,
        )
        .unwrap_err();
        assert_eq!(
            err,
            ExpansionError::NonUnimodularScattering {
                index: 1,
                modulus: 0.5
            }
        );
    }

    #[test]
    fn exponent_pairing() {
        let data = BoundaryData::with_amplitudes(unit(), unit(), unit());
        let s = Complex64::new(0.28, -0.96);
        let spec = build_expansion(&data, s, s, s, 0.25).unwrap();
        for t in spec.terms.iter().filter(|t| t.exponent_im > 0.0) {
            let partner_exp = Complex64::new(6.0, 0.0) - t.exponent();
            let partner = spec
                .terms
                .iter()
                .find(|u| u.component == t.component && u.exponent() == partner_exp)
                .expect("pair present");
            assert_eq!(partner.coefficient(), s * t.coefficient());
            // on the line, 6 − θ coincides with the conjugate
            assert!((partner_exp - t.exponent().conj()).norm() <= 1e-9);
        }
    }

    #[test]
    fn residuals_certify_populated_exponents() {
        let data = BoundaryData::with_amplitudes(unit(), unit(), unit());
        let spec = build_expansion(&data, unit(), unit(), unit(), 0.5).unwrap();
        let polys = vec![
            indicial_poly(SectorId::H40Harmonic(Star6Sign::PlusI), 0).unwrap(),
            indicial_poly(SectorId::H40Harmonic(Star6Sign::MinusI), 0).unwrap(),
            indicial_poly(SectorId::ScalarSystem4x4, 16).unwrap(),
            indicial_poly(SectorId::ScalarSystem4x4, 40).unwrap(),
        ];
        let residuals = residual_order(&spec, &polys);
        assert_eq!(residuals.len(), spec.terms.len());
        for r in &residuals {
            assert!(
                r.certified,
                "{:?} exponent {}+{}i residual {:e}",
                r.component, r.exponent_re, r.exponent_im, r.residual
            );
        }
    }

    #[test]
    fn non_root_exponent_fails_certification() {
        let polys = vec![indicial_poly(SectorId::ScalarSystem4x4, 16).unwrap()];
        let spec = ExpansionSpec {
            delta: 0.5,
            terms: vec![ExpansionTerm {
                component: Component::TrHK,
                operator_tag: Component::TrHK.operator_tag().to_string(),
                exponent_re: 3.0,
                exponent_im: 0.0,
                coefficient_re: 1.0,
                coefficient_im: 0.0,
                symbol: TermSource::V2Out,
            }],
        };
        let r = residual_order(&spec, &polys);
        // |p(3)| at λ = 16 is exactly 184817
        assert!((r[0].residual - 184817.0).abs() < 1e-6);
        assert!(!r[0].certified);
    }

    #[test]
    fn text_render_first_line() {
        let data = BoundaryData::with_amplitudes(unit(), Complex64::ZERO, Complex64::ZERO);
        let spec = build_expansion(&data, unit(), unit(), unit(), 0.5).unwrap();
        let text = render(&spec, RenderFormat::Text);
        assert!(
            text.contains("H_(4,0)  = dx/x∧ (v1 x^{3+6i} + S1(v1) x^{3-6i}) + O(x^{3+δ})"),
            "got: {text}"
        );
    }

    #[test]
    fn json_roundtrip() {
        let data = BoundaryData::with_amplitudes(unit(), Complex64::new(0.2, 0.4), unit());
        let s = Complex64::new(-0.6, 0.8);
        let spec = build_expansion(&data, s, s, s, 0.75).unwrap();
        let json = render(&spec, RenderFormat::Json);
        let parsed: ExpansionSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, spec);
    }
}
