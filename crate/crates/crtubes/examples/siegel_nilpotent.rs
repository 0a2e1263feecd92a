//! The nilpotent translation algebra of a Siegel model: [[n,n],n] = 0
//! exactly, with the center spanned by the imaginary translations.

use crtubes::models::{siegel_nilpotent_basis, SiegelModel};

fn main() {
    for (p, q) in [(1usize, 2usize), (2, 3)] {
        let model = SiegelModel::new(p, q, p.min(1), 0).unwrap();
        let n = siegel_nilpotent_basis(&model);
        let basis = &n.basis;
        let mut max_first = 0usize;
        let mut second_all_zero = true;
        for a in basis {
            for b in basis {
                let ab = a.bracket(b).unwrap();
                if !ab.is_zero() {
                    max_first += 1;
                }
                for c in basis {
                    if !ab.bracket(c).unwrap().is_zero() {
                        second_all_zero = false;
                    }
                }
            }
        }
        println!(
            "Sigma^{{{p},{q}}}: dim n = {}, nonzero first brackets {max_first}, \
             [[n,n],n] = 0: {second_all_zero}",
            basis.len()
        );
        assert!(second_all_zero);
    }
}
