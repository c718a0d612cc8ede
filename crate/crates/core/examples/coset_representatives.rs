//! Representatives of ±Γ₁(N) in SL₂(ℤ) and their coset lookup.

use cmconj::modgroup::{
    coset_count, enumerate_cosets_with, lift_sl2_mod_n, ModMatrix, TieBreak, UnimodularMatrix,
};

fn main() -> cmconj::Result<()> {
    for n in [1u64, 2, 5, 6, 12] {
        println!("N = {n}: {} cosets", coset_count(n));
    }

    let table = enumerate_cosets_with(5, TieBreak::LexMin);
    for (k, g) in table.reps().iter().enumerate() {
        println!("  gamma{} = {g}", k + 1);
    }

    let g = UnimodularMatrix::from_i64([7, 3, 9, 4])?;
    println!(
        "{g} lies in coset {}",
        table.coset_of(&g).map_or(0, |k| k + 1)
    );

    let m = ModMatrix::from_i64([4, 3, 1, 1], 5);
    let lifted = lift_sl2_mod_n(&m)?;
    println!("{m} lifts to {lifted}, which hat maps to {}", lifted.hat());
    Ok(())
}
