//! Finitely generated graded modules over `A = R[u1..un]`, their degree
//! slices as finitely presented `R`-modules, and grading bookkeeping.
//!
//! Conventions used everywhere in the crate:
//!
//! | object | meaning |
//! |---|---|
//! | `A(-q)` | free module on one generator of degree `q`; `A(-q)_d = A_{d-q}` |
//! | `G(p)` | `G(p)_d = G_{d+p}`, so `shift_grading(G, p)` lowers every twist by `p` |
//! | `Gr^F_p` | sits in graded degree `p` |
//! | `F[m]` | `(F[m])_p = F_{p-m}` |
//! | `Ext^j_A(G, A[n])` | `H^j` of `Hom(L, A)[n]`, with `Hom(L^{-j}, A)` placed at index `j - n` |
//! | duality check | `H^j(RΓ_I(G'))_p` against `Ext^j_R(G_{-n-p}, R)` |

mod format;
mod presentation;
mod quotient;
mod slice;

pub use format::{parse_module, write_module};
pub use presentation::{GradedFreeModule, GradedPresentation};
pub use quotient::{QuotientSlices, SliceBasis};
pub use slice::{free_slice, hilbert_data, map_on_slice, slice, slice_with_keys, HilbertData, HilbertEntry, KeyedSlice, SlicePresentation};

/// `(F[m])_p = F_{p−m}`: the index a filtration shift sends `p` to.
pub fn filtration_shift_convention(p: i64, mshift: i64) -> i64 {
    p - mshift
}

/// Applies [`GradedPresentation::shift_grading`].
pub fn shift_grading(g: &GradedPresentation, p: i64) -> GradedPresentation {
    g.shift_grading(p)
}

/// Applies [`GradedPresentation::sign_twist`].
pub fn sign_twist(g: &GradedPresentation) -> GradedPresentation {
    g.sign_twist()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filtration_shift() {
        assert_eq!(filtration_shift_convention(7, 0), 7);
        assert_eq!(filtration_shift_convention(5, 2), 3);
    }
}
