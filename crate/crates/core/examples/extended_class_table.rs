//! The grid Q_i^(γ_k) behind the extended form class group, with the Cartan cross-check.

use cmconj::conjugates::{build_extended_classes, cartan_order};
use cmconj::modgroup::enumerate_cosets;
use cmconj::quadforms::{enumerate_reduced, CMOrder};

fn main() -> cmconj::Result<()> {
    for (d, n) in [(-52i64, 5u64), (-23, 5), (-15, 6), (-20, 4)] {
        let order = CMOrder::new(d)?;
        let table = enumerate_cosets(n);
        let classes = build_extended_classes(&order, &table)?;
        let cartan = cartan_order(&order, n)?;
        let h = enumerate_reduced(order.discriminant())?.len();
        println!(
            "D = {d}, N = {n}: h = {h}, cosets = {}, |S| = {}, |W| = {}, |T| = {}, h * |W/T| = {}",
            table.len(),
            classes.len(),
            cartan.w,
            cartan.t,
            h as u64 * cartan.quotient
        );
    }

    let order = CMOrder::new(-52)?;
    let table = enumerate_cosets(5);
    for c in build_extended_classes(&order, &table)?.iter().take(6) {
        println!("  Q{}^gamma{} = {}", c.i + 1, c.k + 1, c.form);
    }
    Ok(())
}
