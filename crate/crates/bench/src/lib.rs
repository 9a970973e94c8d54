//! Fixtures shared by the benchmarks.

use liecap_core::enumerate::random_solvable;
use liecap_core::{catalog, FieldDescriptor, LieAlgebra};

/// A named algebra to benchmark against.
pub struct Fixture {
    pub label: String,
    pub algebra: LieAlgebra,
}

/// Catalog algebras over GF(p) together with a few seeded random solvable ones.
pub fn fixtures(p: u64, random_dims: &[usize]) -> Vec<Fixture> {
    let d = FieldDescriptor::gf(p).expect("prime modulus");
    let mut out: Vec<Fixture> = catalog::catalog(d)
        .into_iter()
        .map(|algebra| Fixture { label: format!("{}/gf{p}", algebra.name()), algebra })
        .collect();
    for &n in random_dims {
        let algebra = random_solvable(n, p, 0x5eed + n as u64).expect("random algebra");
        out.push(Fixture { label: format!("rand{n}/gf{p}"), algebra });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_labelled_uniquely() {
        let all = fixtures(3, &[3, 4]);
        let mut labels: Vec<_> = all.iter().map(|f| f.label.as_str()).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), all.len());
    }
}
