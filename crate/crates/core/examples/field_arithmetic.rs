//! Arithmetic in F_27 = F_3[e]/(e^3 + 2e + 1).

use octoperm::FieldCtx;

fn main() -> octoperm::Result<()> {
    let f = FieldCtx::with_order(27)?;
    println!("{f}, modulus coefficients {:?}", f.modulus());

    let a = f.parse("2e^3")?;
    let b = f.parse("[1,1,0]")?;
    println!("a = {} = {}", f.format(a), f.format_vector(a));
    println!("b = {} = {}", f.format(b), f.format_vector(b));
    println!("a + b = {}", f.format(f.add(a, b)));
    println!("a * b = {}", f.format(f.mul(a, b)));
    println!("a / b = {}", f.format(f.div(a, b)?));
    println!("b^13 = {}", f.format(f.pow(b, 13)));

    let squares = f.nonzero_elements().into_iter().filter(|&x| f.pow(x, 13) == f.one()).count();
    println!("{squares} nonzero squares");
    Ok(())
}
