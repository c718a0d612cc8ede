//! Numerical checks of r, η, j and the Klein-form relation.

use cmconj::modfunc::{
    check_icosahedral, check_klein_relation, eval_eta, eval_j, eval_rr, PrecisionConfig,
};
use rug::Complex;

fn main() -> cmconj::Result<()> {
    let cfg = PrecisionConfig::with_target(256);
    let prec = cfg.working_bits();
    let i = Complex::with_val(prec, (0, 1));

    println!("r(i)   = {:.40}", eval_rr(&i, &cfg)?.real());
    println!("eta(i) = {:.40}", eval_eta(&i, &cfg)?.real());
    println!("j(i)   = {:.30}", eval_j(&i, &cfg)?.real());

    for (x, y) in [(0.0, 1.0), (0.3, 1.7), (-0.41, 0.2), (0.01, 0.03)] {
        let tau = Complex::with_val(prec, (x, y));
        println!(
            "tau = {x:+}{y:+}i  icosahedral {:.2e}  klein {:.2e}",
            check_icosahedral(&tau, &cfg)?,
            check_klein_relation(&tau, &cfg)?
        );
    }
    Ok(())
}
