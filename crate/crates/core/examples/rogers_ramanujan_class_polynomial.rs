//! Irreducible polynomial of r(√−13) over ℚ, from the 24 conjugates indexed by
//! the extended form class group of discriminant −52 and level 5.

use cmconj::conjugates::{run, ClassFieldJob};
use cmconj::modfunc::{ModularFunction, PrecisionConfig};

fn main() -> cmconj::Result<()> {
    let job = ClassFieldJob::new(
        -52,
        5,
        ModularFunction::RogersRamanujan,
        PrecisionConfig::with_target(320),
    )?;
    let res = run(&job)?;

    println!("reduced forms:");
    for (i, q) in res.forms.iter().enumerate() {
        println!("  Q{} = {q}", i + 1);
    }
    println!("coset representatives: {}", res.coset_count);
    println!(
        "extended classes: {} (h * |W/T| = {} * {})",
        res.class_count,
        res.forms.len(),
        res.cartan.quotient
    );
    println!("r(tau_O) = {:.30}", res.tau_value.real());
    println!();
    for d in &res.conjugates {
        println!(
            "  (i={}, k={})  {}  at {}  ->  {:.20}",
            d.rep.i + 1,
            d.rep.k + 1,
            d.rep.form,
            d.lifted,
            d.value.real()
        );
    }
    println!();
    println!("p(x) = {}", res.p);
    println!(
        "ell = {}, max rounding residual = {:.3e}",
        res.ell,
        res.max_rounding_residual.to_f64()
    );
    println!("|irr(r(tau_O))| = {:.3e}", res.irr_at_tau_residual.to_f64());
    Ok(())
}
