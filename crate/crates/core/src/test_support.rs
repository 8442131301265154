use std::sync::Arc;

use crate::actions::{Automorphism, Context, LatticeMode, Permutation, VarRole, VariableTable};
use crate::arith::rat;

/// `x1..xn`, the first `m` shifted by −1 (`ε_i(x_i) = x_i − 1`), `G`
/// generated by `group`.
pub(crate) fn shift_ctx(n: usize, m: usize, group: Vec<Permutation>) -> Arc<Context> {
    let vars = VariableTable::new(
        (0..n)
            .map(|i| (format!("x{}", i + 1), if i < m { VarRole::Acted } else { VarRole::Fixed }))
            .collect(),
    )
    .unwrap();
    let gens = (0..m)
        .map(|i| {
            let mut o = vec![rat(0, 1); n];
            o[i] = rat(-1, 1);
            Automorphism::Shift { offsets: o }
        })
        .collect();
    Context::builder(vars).lattice(gens, LatticeMode::Group).group(group).build().unwrap()
}

/// Two shifted variables with `G = S_2` swapping them.
pub(crate) fn s2_ctx() -> Arc<Context> {
    shift_ctx(2, 2, vec![Permutation::transposition(2, 0, 1)])
}
