//! Small algebras used throughout tests, benches and the CLI sample inputs.

use crate::error::Result;
use crate::exactlin::{Field, SparseVec};
use crate::gradedalg::{FdAlgebra, Presentation};

/// `k<x,y>/(y^2, yx)` with `|x| = |y| = 1` and `d(x) = xy`.
pub fn example_a(field: Field, d: usize) -> Result<Presentation> {
    Presentation::from_strings(
        field,
        &[("x", 1), ("y", 1)],
        &["y^2", "y*x"],
        &[("x", "x*y")],
        d,
    )
}

/// The ground field as a DG algebra with no generators.
pub fn ground_field(field: Field, d: usize) -> Result<Presentation> {
    Presentation::from_strings(field, &[], &[], &[], d)
}

/// `k[x]`, `|x| = 1`, zero differential.
pub fn polynomial(field: Field, d: usize) -> Result<Presentation> {
    Presentation::from_strings(field, &[("x", 1)], &[], &[], d)
}

/// `k<x>/(x^n)`, `|x| = 1`, zero differential.
pub fn truncated(field: Field, n: usize, d: usize) -> Result<Presentation> {
    let rel = format!("x^{n}");
    Presentation::from_strings(field, &[("x", 1)], &[rel.as_str()], &[], d)
}

/// `k[x,y] = k<x,y>/(xy - yx)`, zero differential.
pub fn commutative_plane(field: Field, d: usize) -> Result<Presentation> {
    Presentation::from_strings(field, &[("x", 1), ("y", 1)], &["x*y - y*x"], &[], d)
}

/// The free algebra `k<u,v>` on two degree-1 generators.
pub fn free_two(field: Field, d: usize) -> Result<Presentation> {
    Presentation::from_strings(field, &[("u", 1), ("v", 1)], &[], &[], d)
}

/// `k[u,v]/(u,v)^2`: three-dimensional with two-dimensional socle.
pub fn square_zero_plane(field: Field) -> Result<FdAlgebra> {
    let mut table = vec![SparseVec::new(); 9];
    for i in 0..3 {
        table[i] = SparseVec::unit(i, field);
        table[i * 3] = SparseVec::unit(i, field);
    }
    FdAlgebra::from_structure_constants(field, vec!["1".into(), "u".into(), "v".into()], table)
}
