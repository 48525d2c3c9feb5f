//! Computational toolkit for the biHecke monoid of a finite Coxeter group:
//! the monoid of functions generated jointly by the sorting and antisorting
//! operators of the 0-Hecke algebra acting on the group, together with the
//! combinatorics (blocks and the cutting poset) and representation theory
//! (translation modules, the Borel submonoid of functions fixing the
//! identity, Cartan and decomposition matrices) attached to it.

pub mod error;
pub mod poset;

pub mod blocks;
pub mod borel;
pub mod check;
pub mod coxeter;
pub mod heckeops;
pub mod linalg;
pub mod reptheory;
pub mod transmod;

pub use error::{Error, Result};

#[cfg(test)]
mod proptests {
    use crate::coxeter::{create_group, Elem, Order};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn group_laws_a3(a in 0u32..24, b in 0u32..24, c in 0u32..24) {
            let g = create_group("A3").unwrap();
            let (a, b, c) = (a as Elem, b as Elem, c as Elem);
            prop_assert_eq!(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c)));
            prop_assert_eq!(g.multiply(a, g.inverse(a)), g.identity());
            prop_assert_eq!(g.inverse(g.multiply(a, b)), g.multiply(g.inverse(b), g.inverse(a)));
        }

        #[test]
        fn descent_definitions_a3(e in 0u32..24) {
            let g = create_group("A3").unwrap();
            for i in 1..=3u32 {
                let bit = 1 << (i - 1);
                let right_down = g.length(g.right_mult_gen(e, i)) < g.length(e);
                prop_assert_eq!(g.right_descents(e) & bit != 0, right_down);
                let left_down = g.length(g.left_mult_gen(e, i)) < g.length(e);
                prop_assert_eq!(g.left_descents(e) & bit != 0, left_down);
            }
        }

        #[test]
        fn weak_leq_iff_length_additive(u in 0u32..24, v in 0u32..24) {
            let g = create_group("A3").unwrap();
            let expected = g.length(u) + g.length(g.multiply(g.inverse(u), v)) == g.length(v);
            prop_assert_eq!(g.leq(Order::RightWeak, u, v), expected);
        }
    }
}
