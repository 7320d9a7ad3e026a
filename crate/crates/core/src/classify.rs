//! Theorem dispatcher: normal-form typing, incidence branches, divisor claims,
//! rationality verdicts and the numeric bound generators.

use serde::{Deserialize, Serialize};

use crate::autgrp::DiagAut;
use crate::cyclo::CycloNum;
use crate::geometry::{
    fixed_locus, galois_by_theorem, FixedLocusReport, GaloisVerdict, GeometryError, SmoothnessOptions,
};
use crate::poly::HomogPoly;

pub mod bounds;
pub mod branches;
pub mod rationality;

pub use bounds::{
    badr_bars_divisors, check_range, codim_one_side_condition, theorem11_divisors, zheng_entries, zheng_integers,
    ZhengEntry,
};
pub use branches::{
    divisor_claims, incidence_case, multiplier_consistent, normal_form, Incidence, NormalForm, NormalType, Partner,
    ScopeReason, VertexState,
};
pub use rationality::{galois_power, rationality_verdict, GaloisPower, Note, Rationality, RationalityInput, TheoremId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("(n, d) = ({n}, {d}) is outside the supported range")]
    UnsupportedRange { n: u64, d: u64 },
    #[error("coordinate point P{vertex} lies on X with no monomial X{vertex}^(d-1)*Xj, so X is singular there")]
    VertexViolatesSmoothness { vertex: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The order-theoretic part of a classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCase {
    pub n: u64,
    pub d: u64,
    pub order: u64,
    pub normal_form: NormalForm,
    /// `None` when out of scope.
    pub incidence: Option<Incidence>,
    /// Multiplier of the normalized automorphism on `F`.
    pub multiplier_t: CycloNum,
    /// The multiplier satisfies the relations forced by smoothness.
    pub multiplier_consistent: bool,
    pub divisor_claims: Vec<u64>,
}

impl OrderCase {
    pub fn normal_type(&self) -> NormalType {
        self.normal_form.normal_type
    }

    /// `order` divides a claim, or the case is out of scope.
    pub fn claim_holds(&self) -> bool {
        !self.normal_type().in_scope() || bounds::divides_some(self.order, &self.divisor_claims)
    }

    pub fn branch_label(&self) -> String {
        match &self.incidence {
            Some(i) => i.label(),
            None => String::from("-"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedCase {
    #[serde(flatten)]
    pub order_case: OrderCase,
    pub rationality: Rationality,
    pub galois: GaloisVerdict,
    pub galois_power: Option<GaloisPower>,
    pub warnings: Vec<Note>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassifyOptions {
    /// Smoothness of `X` has been certified; otherwise verdicts are conditional.
    pub smooth_verified: bool,
    pub macaulay: SmoothnessOptions,
}

/// Types `g`, reads its incidence branch, and computes the divisor claims.
pub fn classify_order(f: &HomogPoly, g: &DiagAut, fix: &FixedLocusReport) -> Result<OrderCase, ClassifyError> {
    let n = (f.num_vars() as u64).saturating_sub(2);
    let d = u64::from(f.degree());
    check_range(n, d)?;
    let nf = normal_form(g, fix);
    let f_normal = f.permute(&nf.perm);
    let t_exp = nf.aut.multiplier_exp(&f_normal).map_err(GeometryError::NotAnAutomorphism)?;
    let multiplier_t = CycloNum::root_of_unity(nf.aut.level(), t_exp as i64).expect("positive level");
    let (incidence, claims, consistent) = if nf.normal_type.in_scope() {
        let inc = incidence_case(&f_normal, nf.normal_type)
            .map_err(|e| ClassifyError::VertexViolatesSmoothness { vertex: nf.perm[e.0] })?;
        let claims = divisor_claims(n, d, nf.normal_type, &inc)?;
        (Some(inc), claims, multiplier_consistent(nf.normal_type, n, &nf.aut, t_exp))
    } else {
        (None, Vec::new(), true)
    };
    Ok(OrderCase {
        n,
        d,
        order: g.order_in_pgl(),
        normal_form: nf,
        incidence,
        multiplier_t,
        multiplier_consistent: consistent,
        divisor_claims: claims,
    })
}

/// Full classification: order claims, rationality, Galois projections, warnings.
pub fn classify(f: &HomogPoly, g: &DiagAut, opts: &ClassifyOptions) -> Result<ClassifiedCase, ClassifyError> {
    let fix = fixed_locus(f, g)?;
    classify_with_fix(f, g, &fix, opts)
}

pub fn classify_with_fix(
    f: &HomogPoly,
    g: &DiagAut,
    fix: &FixedLocusReport,
    opts: &ClassifyOptions,
) -> Result<ClassifiedCase, ClassifyError> {
    let order_case = classify_order(f, g, fix)?;
    let galois = galois_by_theorem(f, g)?;
    let rationality = rationality_verdict(&RationalityInput {
        f,
        g,
        fix,
        normal_type: order_case.normal_type(),
        galois: &galois,
        smooth_verified: opts.smooth_verified,
        macaulay: opts.macaulay,
    });
    let power = galois_power(f, g)?;
    let mut warnings = rationality::galois_point_notes(f, g, fix);
    if !order_case.multiplier_consistent {
        warnings.push(Note::new(
            "multiplier-inconsistent",
            format!(
                "multiplier {} violates the relations forced by smoothness for {}",
                order_case.multiplier_t,
                order_case.normal_type()
            ),
        ));
    }
    if order_case.normal_type().in_scope() && !order_case.claim_holds() {
        warnings.push(Note::new(
            "claim-violated",
            format!("order {} divides none of {:?}", order_case.order, order_case.divisor_claims),
        ));
    }
    if !opts.smooth_verified {
        warnings.push(Note::new("smoothness-unverified", "smoothness was assumed, not certified"));
    }
    Ok(ClassifiedCase { order_case, rationality, galois, galois_power: power, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verified() -> ClassifyOptions {
        ClassifyOptions { smooth_verified: true, ..Default::default() }
    }

    #[test]
    fn fermat_quintic_surface_reflection() {
        let f = HomogPoly::parse("X0^5+X1^5+X2^5+X3^5", None).unwrap();
        let g: DiagAut = "diag(z5, 1, 1, 1)".parse().unwrap();
        let c = classify(&f, &g, &verified()).unwrap();
        assert_eq!(c.order_case.normal_type(), NormalType::I);
        assert_eq!(c.order_case.order, 5);
        assert_eq!(c.order_case.divisor_claims, vec![5]);
        assert_eq!(c.rationality.cited(), Some(TheoremId::DegreeQuotientProjectiveSpace));
        assert!(c.warnings.is_empty());
    }

    #[test]
    fn witness_gets_corrected_theorem_warning() {
        for d in 3u32..=5 {
            let f = HomogPoly::parse(&format!("X0^{d} + X1^{d} + X2^{d} + X0*X3^{e} + X1*X4^{e}", e = d - 1), Some(5))
                .unwrap();
            let g = DiagAut::new(u64::from(d * (d - 1)), vec![d.into(), d.into(), 1, 0, 0]).unwrap();
            let c = classify(&f, &g, &verified()).unwrap();
            let oc = &c.order_case;
            assert_eq!(oc.normal_type(), NormalType::V);
            assert_eq!(oc.order, u64::from(d * (d - 1)));
            assert!(oc.multiplier_consistent);
            assert_eq!(oc.multiplier_t, g.eigenvalues()[0]);
            assert_eq!(c.rationality.cited(), Some(TheoremId::TypeFive), "d = {d}");
            assert!(c.warnings.iter().any(|w| w.key == "thm-4.5-corrected"));
        }
    }

    #[test]
    fn unsupported_range() {
        let f = HomogPoly::parse("X0^4+X1^4+X2^4+X3^4", None).unwrap();
        let g: DiagAut = "diag(z4, 1, 1, 1)".parse().unwrap();
        assert_eq!(classify(&f, &g, &verified()).unwrap_err(), ClassifyError::UnsupportedRange { n: 2, d: 4 });
    }

    #[test]
    fn singular_vertex_is_reported() {
        // P0 ∈ X with no X0^2*Xj term.
        let f = HomogPoly::parse("X0*X1*X2 + X1^3 + X2^3 + X3^3", None).unwrap();
        let g = DiagAut::new(3, vec![1, 0, 0, 0]).unwrap();
        assert!(fixed_locus(&f, &g).is_err());
        let f = HomogPoly::parse("X1^3 + X2^3 + X3^3", Some(4)).unwrap();
        let err = classify(&f, &g, &verified()).unwrap_err();
        assert_eq!(err, ClassifyError::VertexViolatesSmoothness { vertex: 0 });
    }
}
