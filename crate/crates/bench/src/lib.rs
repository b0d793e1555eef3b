//! Benchmark fixtures shared by the criterion targets: the worked instances
//! that drive the Groebner kernel hardest at desk scale.

use std::sync::Arc;

use paraclose_core::forcing::{ForcingPresentation, ParameterSystem, RingPresentation};
use paraclose_core::groebner::Ideal;
use paraclose_core::poly::{MonomialOrder, PolyRing, Polynomial};
use paraclose_core::Field;

pub fn roberts_ring() -> Arc<PolyRing> {
    PolyRing::of(&["x", "y", "z"], Field::Q, MonomialOrder::GrevLex).unwrap()
}

pub fn roberts_ideal(ring: &Arc<PolyRing>) -> Ideal {
    Ideal::parse(ring, &["x^3", "y^3", "z^3"]).unwrap()
}

pub fn roberts_target(ring: &Arc<PolyRing>) -> Polynomial {
    Polynomial::parse(ring, "x^2*y^2*z^2").unwrap()
}

/// The F_2 quadric instance: the hardest negative search in the suites.
pub fn quadric_f2() -> (ForcingPresentation, ParameterSystem) {
    let field = Field::fp(2).unwrap();
    let ring = PolyRing::of(&["x", "y", "z"], field, MonomialOrder::GrevLex).unwrap();
    let relations = Ideal::parse(&ring, &["x^2 + y^2 - z^2"]).unwrap();
    let base = RingPresentation::new(&ring, relations).unwrap();
    let data = vec![
        Polynomial::parse(&ring, "x").unwrap(),
        Polynomial::parse(&ring, "y").unwrap(),
    ];
    let h = Polynomial::parse(&ring, "z").unwrap();
    let a = ForcingPresentation::new(base, data, h).unwrap();
    let params = ParameterSystem::new(vec![
        Polynomial::parse(&ring, "x").unwrap(),
        Polynomial::parse(&ring, "y").unwrap(),
    ])
    .unwrap();
    (a, params)
}
