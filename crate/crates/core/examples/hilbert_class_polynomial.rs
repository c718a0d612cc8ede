//! Hilbert class polynomials H_D(x) from j at level 1.

use cmconj::conjugates::{run, ClassFieldJob};
use cmconj::modfunc::{ModularFunction, PrecisionConfig};

fn main() -> cmconj::Result<()> {
    for d in [-7, -8, -15, -20, -23, -31, -52, -71] {
        let job = ClassFieldJob::new(d, 1, ModularFunction::J, PrecisionConfig::with_target(256))?;
        let res = run(&job)?;
        println!("D = {d:>4}  h = {}  H_D(x) = {}", res.forms.len(), res.irr);
    }
    Ok(())
}
