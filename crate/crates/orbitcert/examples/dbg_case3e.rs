use orbitcert::elevate::{elevate_matrix, elevate_vector};
use orbitcert::ratmat::{rat_int, RatMatrix, RatVector};
use orbitcert::spectral::jordan_chains;

fn main() {
    let a = RatMatrix::from_ints(&[
        &[0, -1, 1, 0],
        &[1, 0, 0, 1],
        &[0, 0, 0, -1],
        &[0, 0, 1, 0],
    ]);
    let e = elevate_matrix(&a, 2).unwrap();
    let cp = orbitcert::ratmat::char_poly(&e.matrix).unwrap();
    println!("char(Psi2) eval at 1: {}", cp.eval(&rat_int(1)));
    let chains = jordan_chains(&e.matrix, &rat_int(1)).unwrap();
    println!("chains at 1: {:?}", chains.iter().map(|c| c.len()).collect::<Vec<_>>());
    let x = RatVector::from_ints(&[1, 0, 1, 0]);
    let y = RatVector::from_ints(&[5, 5, 5, 5]);
    let xe = elevate_vector(&x, 2).unwrap();
    let ye = elevate_vector(&y, 2).unwrap();
    for (ci, c) in chains.iter().enumerate() {
        let top = c.top();
        println!(
            "chain {ci} len {}: <top, Xe> = {}, <top, Ye> = {}",
            c.len(),
            top.dot(&xe).unwrap(),
            top.dot(&ye).unwrap()
        );
        for (i, v) in c.vectors.iter().enumerate() {
            println!("   e{i} . Xe = {}", v.dot(&xe).unwrap());
        }
    }
}
