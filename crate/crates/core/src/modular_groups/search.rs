use rayon::prelude::*;

use super::frame::SubgroupFrame;
use super::group::ambient_image;
use super::matrix::MatrixModF;
use crate::fq_poly::{Field, Poly};
use crate::{Guard, Result};

/// The first frame, over subgroups generated by one element and then by two,
/// whose quasi-level has exactly the basis `target` (reduced echelon form).
///
/// Generator tuples are ordered by the sorted element list of the reduced
/// group, singletons before pairs.
pub fn find_frame_with_quasi_level(
    field: &Field,
    f: &Poly,
    target: &[Poly],
    guard: Guard,
) -> Result<Option<SubgroupFrame>> {
    let ambient = ambient_image(field, f, guard)?;
    let elems = ambient.elements();
    let n = elems.len();
    guard.check("generator pairs", (n as u128) * (n as u128 + 1) / 2)?;
    let mut tuples: Vec<Vec<MatrixModF>> = elems.iter().map(|&g| vec![g]).collect();
    for i in 0..n {
        for j in i + 1..n {
            tuples.push(vec![elems[i], elems[j]]);
        }
    }
    let found = tuples.par_iter().find_map_first(|gens| {
        let frame = SubgroupFrame::new(ambient.clone(), gens.clone()).ok()?;
        let ql = frame.quasi_level().ok()?;
        (ql.basis == target).then_some(frame)
    });
    Ok(found)
}

/// The frame over `F_2` with modulus `T^2` whose quasi-level is the span of
/// `1`, a subspace that is not an ideal.
pub fn span_one_frame(guard: Guard) -> Result<Option<SubgroupFrame>> {
    let field = Field::new(2, 1)?;
    let f = Poly::from_codes(&[0, 0, 1]);
    find_frame_with_quasi_level(&field, &f, &[Poly::one()], guard)
}
