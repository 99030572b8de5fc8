#![allow(dead_code)]

pub mod oracle;

use std::sync::Arc;

use scheme_forge::action::{ActionFamily, ActionSpec};
use scheme_forge::config::RunConfig;
use scheme_forge::gf::FieldSpec;
use scheme_forge::scheme::TranslationScheme;
use scheme_forge::space::{AbelianSpace, SpaceSpec};

pub fn config_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

pub fn space(spec: SpaceSpec) -> Arc<AbelianSpace> {
    Arc::new(AbelianSpace::new(&spec).unwrap())
}

pub fn scheme_on(space: &Arc<AbelianSpace>, action: ActionSpec) -> TranslationScheme {
    let family = ActionFamily::resolve(&action, space).unwrap();
    TranslationScheme::from_action(space.clone(), &family).unwrap().0
}

pub fn vector(n: usize, p: u32, e: u32) -> SpaceSpec {
    SpaceSpec::Vector { n, field: FieldSpec { p, e, modulus: None } }
}

/// The ten instances of the axiom suite.
pub fn suite() -> Vec<(&'static str, RunConfig)> {
    let f = |p, e| FieldSpec { p, e, modulus: None };
    vec![
        ("central/Z_8", RunConfig::new(SpaceSpec::CyclicProduct { moduli: vec![8] }, ActionSpec::Central)),
        ("cyclotomic(d=2)/F_5", RunConfig::new(vector(1, 5, 1), ActionSpec::Cyclotomic { d: 2 })),
        (
            "bilinear(2,2)/F_2",
            RunConfig::new(SpaceSpec::MatrixFull { m: 2, n: 2, field: f(2, 1) }, ActionSpec::Bilinear { m: None, n: None }),
        ),
        (
            "alternating(4)/F_2",
            RunConfig::new(SpaceSpec::MatrixAlternating { m: 4, field: f(2, 1) }, ActionSpec::Alternating { m: None }),
        ),
        (
            "hermitian(2)/F_4",
            RunConfig::new(SpaceSpec::MatrixHermitian { m: 2, field: f(2, 2) }, ActionSpec::Hermitian { m: None }),
        ),
        (
            "symmetric(2)/F_5",
            RunConfig::new(SpaceSpec::MatrixSymmetric { m: 2, field: f(5, 1) }, ActionSpec::Symmetric { m: None }),
        ),
        ("hamming(2)/F_2", RunConfig::new(vector(2, 2, 1), ActionSpec::Hamming { n: None })),
        ("hamming(4)/F_3", RunConfig::new(vector(4, 3, 1), ActionSpec::Hamming { n: None })),
        (
            "weak_hamming(1,1)/F_2",
            RunConfig::new(vector(2, 2, 1), ActionSpec::WeakHamming { levels: Some(vec![1, 1]) }),
        ),
        (
            "weak_hamming(2,1)/F_2",
            RunConfig::new(vector(3, 2, 1), ActionSpec::WeakHamming { levels: Some(vec![2, 1]) }),
        ),
    ]
}
