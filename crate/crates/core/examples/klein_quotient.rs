//! A quotient of Klein forms as the modular function.

use cmconj::conjugates::{run, ClassFieldJob};
use cmconj::modfunc::{ModularFunction, PrecisionConfig};

fn main() -> cmconj::Result<()> {
    let f = ModularFunction::parse("klein-quotient:1/12,0/12|5/12,0/12")?;
    println!(
        "{f}: level {}, rational coefficients {}",
        f.level(),
        f.has_rational_coefficients()
    );

    let job = ClassFieldJob::new(-52, 12, f, PrecisionConfig::with_target(256))?;
    let res = run(&job)?;
    println!("conjugates: {}, ell = {}", res.conjugates.len(), res.ell);
    println!("irr(x) = {}", res.irr);
    Ok(())
}
