use spinboson::bath::*;
use spinboson::spectral::*;

fn main() {
    let sid = SpectralDensityId::new(Model::B, Variant::Infinite);
    let p = ModelParams {
        eta: 0.0049,
        omega_c: 3.0,
        lambda: 1.0,
        kappa1: 1.0,
        kappa2: 0.0,
        omega0_iho: 52.0,
        mass_mode: MassMode::FixedMass(1.0),
    };
    let bath = ThermalBathSpec::new(sid, p, 300.0, 1e12).unwrap();
    // probe J around the resonance
    for d in [-1e-6, -1e-8, -1e-10, -1e-11, 0.0, 1e-11, 1e-10, 1e-8, 1e-6] {
        let w = 52.0 + d;
        match evaluate(sid, &p, w) {
            Ok(j) => println!("J(52{d:+e}) = {j:.6e}"),
            Err(e) => println!("J(52{d:+e}) -> {e}"),
        }
    }
    println!("omega_max = {}", bath.omega_max());
    match build_coefficients(&bath, 0.1, 1) {
        Ok(c) => println!("self = {:?} pair1 = {:?}", c.interior_self, c.interior_pair[0]),
        Err(e) => println!("build error: {e}"),
    }
}
