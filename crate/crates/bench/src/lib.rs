//! Shared inputs for the kernel benchmarks.

use grlie::alexander::{alexander_presentation, ElimConfig, ModulePresentation};
use grlie::cohomology::{algebra_family, AlgebraFamily, TwoStepAlgebra};
use grlie::groups::{family, free_product, Family};

pub fn vp4_plus_module() -> ModulePresentation {
    alexander_presentation(&family(Family::VPPlus(4)).unwrap()).unwrap()
}

pub fn pbar4_star_z_module() -> ModulePresentation {
    let g = free_product(&family(Family::PBar4).unwrap(), &family(Family::Integers).unwrap());
    alexander_presentation(&g).unwrap()
}

pub fn vp4_plus_algebra() -> TwoStepAlgebra {
    algebra_family(AlgebraFamily::BeerVPPlus(4)).unwrap()
}

pub fn elim() -> ElimConfig {
    ElimConfig::with_seed(1)
}
