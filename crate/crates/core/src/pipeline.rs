//! The `check`, `build` and `dual` pipelines behind the command line.

use std::sync::Arc;

use serde::Serialize;

use crate::action::{self, ActionFamily, ActionSpec, GeneratorSet, NegationWitness};
use crate::config::RunConfig;
use crate::duality::{self, AdjointStatus, DualityCertificate, DualityOptions, Mode};
use crate::error::{Error, Result};
use crate::scheme::{
    AxiomReport, IntersectionTensor, TranslationScheme, DEFAULT_MATRIX_BOUND, PRODUCT_CHECK_BOUND,
    VERIFY_REPRESENTATIVES_BOUND,
};
use crate::space::{AbelianSpace, SpaceKind};

/// Additivity is checked exhaustively for built-in families up to this size.
pub const ADDITIVITY_CHECK_BOUND: usize = 256;

/// Command-line overrides; unset fields fall back to the config, then to
/// the defaults.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub matrix_bound: Option<usize>,
    pub size_bound: Option<usize>,
    pub verify_representatives: Option<bool>,
}

#[derive(Debug, Clone, Copy)]
struct Settings {
    matrix_bound: usize,
    size_bound: Option<usize>,
    verify_representatives: Option<bool>,
}

impl Settings {
    fn new(config: &RunConfig, o: Overrides) -> Settings {
        Settings {
            matrix_bound: o.matrix_bound.or(config.matrix_bound).unwrap_or(DEFAULT_MATRIX_BOUND),
            size_bound: o.size_bound.or(config.size_bound),
            verify_representatives: o.verify_representatives.or(config.verify_representatives),
        }
    }

    fn verify_for(&self, size: usize) -> bool {
        self.verify_representatives.unwrap_or(size <= VERIFY_REPRESENTATIVES_BOUND)
    }
}

/// A resolved configuration: space, family, generators and orbit scheme.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub space: Arc<AbelianSpace>,
    pub family: ActionFamily,
    pub generators: GeneratorSet,
    pub scheme: TranslationScheme,
}

pub fn prepare(config: &RunConfig, overrides: Overrides) -> Result<Prepared> {
    let settings = Settings::new(config, overrides);
    let space = config.build_space(settings.size_bound)?;
    let family = config.resolve(&space)?;
    prepare_on(space, family)
}

fn prepare_on(space: Arc<AbelianSpace>, family: ActionFamily) -> Result<Prepared> {
    let (scheme, generators) = TranslationScheme::from_action(space.clone(), &family)?;
    Ok(Prepared { space, family, generators, scheme })
}

#[derive(Debug, Clone, Serialize)]
pub struct Condition3 {
    pub pass: bool,
    /// `exhaustive` or `by construction`.
    pub method: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub status: &'static str,
    pub pass: bool,
    pub scheme: String,
    pub space: String,
    pub size: usize,
    pub generators: usize,
    pub condition_3: Condition3,
    pub condition_4: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_4_witness: Option<NegationWitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_6_pairing: Option<Vec<usize>>,
    pub d: usize,
    pub valencies: Vec<usize>,
    pub class_labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// A negation witness with coordinates spelled out.
#[derive(Debug, Clone, Serialize)]
pub struct NegationWitnessReport {
    #[serde(flatten)]
    pub witness: NegationWitness,
    pub point_coords: String,
    pub negated_coords: String,
}

impl CheckReport {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn space_name(space: &AbelianSpace) -> String {
    let field = space
        .field()
        .map(|f| format!("/F_{}", f.order()))
        .unwrap_or_default();
    format!("{}{field}", space.kind().name())
}

fn notes(space: &AbelianSpace, family: &ActionFamily) -> Vec<String> {
    let mut out = Vec::new();
    if let SpaceKind::CyclicProduct { .. } = space.kind() {
        let nu = space.character_order();
        out.push(format!("period read as the exponent of X, nu = {nu}"));
        let prime_power = (2..=nu).find(|p| nu.is_multiple_of(*p)).is_some_and(|p| {
            let mut n = nu;
            while n.is_multiple_of(p) {
                n /= p;
            }
            n == 1
        });
        if matches!(family, ActionFamily::Central) && nu > 1 && !prime_power {
            out.push(format!("unit action with exponent {nu}, not a prime power"));
        }
    }
    out
}

pub fn check_prepared(prepared: &Prepared, verify_representatives: bool) -> CheckReport {
    let Prepared { space, family, generators, scheme } = prepared;
    let custom = matches!(family, ActionFamily::Custom { .. });
    let condition_3 = if custom || space.size() <= ADDITIVITY_CHECK_BOUND {
        Condition3 {
            pass: generators.generators().iter().all(|g| action::check_additive(g, space).is_ok()),
            method: "exhaustive",
        }
    } else {
        Condition3 { pass: true, method: "by construction" }
    };
    let partition = scheme.partition();
    let c4 = action::check_condition_4(partition, space);
    let condition_4_witness = c4.err().map(|w| NegationWitnessReport {
        witness: w,
        point_coords: space.describe(w.point),
        negated_coords: space.describe(w.negated),
    });
    let (status, pass, pairing, axioms) = if !condition_3.pass {
        ("not_additive", false, None, None)
    } else if c4.is_ok() {
        let axioms = scheme.verify_axioms(verify_representatives);
        let ok = axioms.all_pass();
        (if ok { "symmetric_scheme" } else { "axiom_failure" }, ok, None, Some(axioms))
    } else {
        match action::check_condition_6(partition, space) {
            Some(p) => ("commutative_non_symmetric", true, Some(p), None),
            None => ("not_a_scheme", false, None, None),
        }
    };
    CheckReport {
        status,
        pass,
        scheme: scheme.label().to_string(),
        space: space_name(space),
        size: space.size(),
        generators: generators.len(),
        condition_3,
        condition_4: c4.is_ok(),
        condition_4_witness,
        condition_6_pairing: pairing,
        d: scheme.d(),
        valencies: scheme.valencies(),
        class_labels: scheme.class_labels().to_vec(),
        axioms,
        notes: notes(space, family),
    }
}

pub fn check(config: &RunConfig, overrides: Overrides) -> Result<CheckReport> {
    let settings = Settings::new(config, overrides);
    let prepared = prepare(config, overrides)?;
    Ok(check_prepared(&prepared, settings.verify_for(prepared.space.size())))
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjacencySummary {
    /// Row sums of each `A_i`; they equal the valencies.
    pub row_sums: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bose_mesner_closure: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchemeReport {
    #[serde(flatten)]
    pub check: CheckReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_tensor: Option<IntersectionTensor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjacency: Option<AdjacencySummary>,
}

pub fn build(config: &RunConfig, overrides: Overrides) -> Result<SchemeReport> {
    let settings = Settings::new(config, overrides);
    let prepared = prepare(config, overrides)?;
    let check = check_prepared(&prepared, settings.verify_for(prepared.space.size()));
    let tensor = check.axioms.as_ref().and_then(|a| a.tensor.clone());
    let scheme = &prepared.scheme;
    let adjacency = match &tensor {
        Some(t) if prepared.space.size() <= settings.matrix_bound => {
            let row_sums = (0..scheme.partition().num_classes())
                .map(|i| {
                    let a = scheme.adjacency_matrix(i, settings.matrix_bound)?;
                    let mut sums: Vec<usize> =
                        a.iter().map(|row| row.iter().map(|&v| v as usize).sum()).collect();
                    sums.dedup();
                    Ok(sums)
                })
                .collect::<Result<_>>()?;
            let closure = if prepared.space.size() <= PRODUCT_CHECK_BOUND {
                Some(scheme.verify_bose_mesner(t, settings.matrix_bound)?)
            } else {
                None
            };
            Some(AdjacencySummary { row_sums, bose_mesner_closure: closure })
        }
        Some(_) => {
            return Err(Error::Resource {
                what: "adjacency matrices",
                needed: prepared.space.size(),
                bound: settings.matrix_bound,
            })
        }
        None => None,
    };
    Ok(SchemeReport { check, p_tensor: tensor, adjacency })
}

/// The natural partner of a family when no second config is given.
pub fn default_dual(family: &ActionFamily) -> ActionFamily {
    match family {
        ActionFamily::WeakHamming { levels } => ActionFamily::WeakHammingDual { levels: levels.clone() },
        ActionFamily::WeakHammingDual { levels } => ActionFamily::WeakHamming { levels: levels.clone() },
        other => other.clone(),
    }
}

/// Runs the adjoint checks of `g`'s generators against `g_check`'s classes.
pub fn adjoint_status(g: &Prepared, g_check: &TranslationScheme) -> AdjointStatus {
    match action::adjoint_map(&g.family, &g.generators, &g.space) {
        Ok(adjoint) => {
            let check = action::verify_adjoint(&g.generators, &adjoint, &g.space);
            let codomain_ok = action::verify_codomain(&adjoint, g_check.partition()).is_ok();
            AdjointStatus::Checked { check, codomain_ok }
        }
        Err(e) => AdjointStatus::Unavailable { reason: e.to_string() },
    }
}

/// Duality certificate for `a` against `b`, or against its natural partner.
pub fn dual(a: &RunConfig, b: Option<&RunConfig>, overrides: Overrides) -> Result<DualityCertificate> {
    let settings = Settings::new(a, overrides);
    let g = prepare(a, overrides)?;
    let g_check = match b {
        Some(b) => {
            let other = b.build_space(settings.size_bound)?;
            if *other != *g.space {
                return Err(Error::Config("the two configs describe different spaces".into()));
            }
            let family = b.resolve(&g.space)?;
            prepare_on(g.space.clone(), family)?
        }
        None => prepare_on(g.space.clone(), default_dual(&g.family))?,
    };
    let mode = if g.family == g_check.family { Mode::SelfDual } else { Mode::Cross };
    let adjoint = adjoint_status(&g, &g_check.scheme);
    let options = DualityOptions {
        matrix_bound: settings.matrix_bound,
        verify_representatives: settings.verify_for(g.space.size()),
    };
    duality::duality_report(&g.scheme, &g_check.scheme, mode, adjoint, options)
}

/// Config for an action on the same space as `config`.
pub fn with_action(config: &RunConfig, action: ActionSpec) -> RunConfig {
    RunConfig { action, poset: None, ..config.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::space::SpaceSpec;

    fn cfg(space: SpaceSpec, action: ActionSpec) -> RunConfig {
        RunConfig::new(space, action)
    }

    #[test]
    fn cyclic_notes() {
        let z8 = check(&cfg(SpaceSpec::CyclicProduct { moduli: vec![8] }, ActionSpec::Central), Overrides::default()).unwrap();
        assert_eq!(z8.notes, vec!["period read as the exponent of X, nu = 8".to_string()]);
        let z6 = check(&cfg(SpaceSpec::CyclicProduct { moduli: vec![2, 6] }, ActionSpec::Central), Overrides::default()).unwrap();
        assert_eq!(z6.notes.len(), 2);
        assert!(z6.notes[1].contains("not a prime power"));
        let f = check(&cfg(SpaceSpec::Vector { n: 2, field: FieldSpec::prime(2) }, ActionSpec::Hamming { n: None }), Overrides::default()).unwrap();
        assert!(f.notes.is_empty());
    }

    #[test]
    fn symmetric_branches() {
        let r = check(
            &cfg(SpaceSpec::MatrixSymmetric { m: 2, field: FieldSpec::prime(5) }, ActionSpec::Symmetric { m: None }),
            Overrides::default(),
        )
        .unwrap();
        assert_eq!(r.status, "symmetric_scheme");
        let r = check(
            &cfg(SpaceSpec::MatrixSymmetric { m: 2, field: FieldSpec::prime(3) }, ActionSpec::Symmetric { m: None }),
            Overrides::default(),
        )
        .unwrap();
        assert_eq!(r.status, "commutative_non_symmetric");
        assert!(r.pass && r.condition_6_pairing.is_some());
        let w = r.condition_4_witness.unwrap();
        assert_eq!(w.point_coords, "[1 0; 0 0]");
        assert_eq!(w.negated_coords, "[2 0; 0 0]");
    }

    #[test]
    fn build_reports() {
        let r = build(
            &cfg(SpaceSpec::Vector { n: 4, field: FieldSpec::prime(3) }, ActionSpec::Hamming { n: None }),
            Overrides::default(),
        )
        .unwrap();
        assert_eq!(r.check.d, 4);
        assert_eq!(r.check.valencies, vec![1, 8, 24, 32, 16]);
        let sums = r.adjacency.unwrap().row_sums;
        assert_eq!(sums.iter().cloned().collect::<Vec<_>>(), vec![vec![1], vec![8], vec![24], vec![32], vec![16]]);
        let r = build(
            &cfg(SpaceSpec::MatrixAlternating { m: 4, field: FieldSpec::prime(2) }, ActionSpec::Alternating { m: None }),
            Overrides::default(),
        )
        .unwrap();
        assert_eq!(r.check.valencies, vec![1, 35, 28]);
        assert_eq!(r.adjacency.unwrap().bose_mesner_closure, Some(true));
    }

    #[test]
    fn dual_space_mismatch_is_config_error() {
        let a = cfg(SpaceSpec::Vector { n: 2, field: FieldSpec::prime(2) }, ActionSpec::Hamming { n: None });
        let b = cfg(SpaceSpec::Vector { n: 3, field: FieldSpec::prime(2) }, ActionSpec::Hamming { n: None });
        assert!(matches!(dual(&a, Some(&b), Overrides::default()), Err(Error::Config(_))));
    }

    #[test]
    fn custom_action_has_no_adjoint_witness() {
        let a = cfg(
            SpaceSpec::Vector { n: 1, field: FieldSpec::prime(5) },
            ActionSpec::Custom { generators: vec![vec![0, 4, 3, 2, 1]] },
        );
        let cert = dual(&a, None, Overrides::default()).unwrap();
        assert!(cert.pass);
        assert_eq!(cert.status, "dual (no adjoint witness)");
    }

    #[test]
    fn resource_bound_on_build() {
        let a = cfg(SpaceSpec::Vector { n: 4, field: FieldSpec::prime(3) }, ActionSpec::Hamming { n: None });
        let o = Overrides { matrix_bound: Some(16), ..Default::default() };
        assert!(matches!(build(&a, o), Err(Error::Resource { .. })));
        let o = Overrides { size_bound: Some(16), ..Default::default() };
        assert!(matches!(check(&a, o), Err(Error::Resource { .. })));
    }
}
