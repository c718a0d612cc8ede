//! Integer polynomial algebra: rounding, gcd, squarefree part and power detection.

use cmconj::polyalgebra::{
    poly_gcd, power_check, product_of_linear, round_coefficients, squarefree_part, IntPolynomial,
};
use rug::Complex;

fn main() -> cmconj::Result<()> {
    let g = IntPolynomial::from_descending(&[1, 0, -2]);
    let p = g.pow(3);
    let s = squarefree_part(&p);
    println!("p = {p}");
    println!("squarefree part = {s}, p = ({s})^{}", power_check(&p, &s)?);
    println!("gcd(p, p') = {}", poly_gcd(&p, &p.derivative()));

    let prec = 192;
    let r2 = Complex::with_val(prec, 2).sqrt();
    let values = vec![
        r2.clone(),
        -r2,
        Complex::with_val(prec, (0, 1)),
        Complex::with_val(prec, (0, -1)),
    ];
    let (q, residual) = round_coefficients(&product_of_linear(&values, prec), 128)?;
    println!(
        "(x^2 - 2)(x^2 + 1) = {q}, residual {:.2e}",
        residual.to_f64()
    );
    Ok(())
}
