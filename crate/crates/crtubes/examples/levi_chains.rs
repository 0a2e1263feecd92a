//! Iterated Levi kernels: the 2-nondegenerate tube over the cone of
//! rank-one semidefinite hermitian matrices, the Siegel model over it,
//! and the kernel split H^k(Sigma) = H^k(T) + W^k.

use crtubes::levi::{holomorphic_nondegenerate, levi_chain, siegel_split, LeviModel};
use crtubes::models::{ConeSpec, SiegelModel};

fn main() {
    let tube = LeviModel::TubeCone(ConeSpec::new(2, 1, 0).unwrap());
    let res = levi_chain(&tube, 2).unwrap();
    println!("tube over C^2_{{1,0}}: dims {:?}", res.dims);
    println!("  nondegeneracy: {:?}", holomorphic_nondegenerate(&tube, 2).unwrap());

    let sm = SiegelModel::new(2, 3, 1, 0).unwrap();
    let res = levi_chain(&LeviModel::Siegel(sm.clone()), 2).unwrap();
    println!("Sigma^{{2,3}}_{{1,0}}: dims {:?}", res.dims);
    for k in 0..=2 {
        let s = siegel_split(&sm, k).unwrap();
        println!(
            "  H^{k} split: dim H^{k}(T) = {}, dim W^{k} = {}",
            s.t_part.len(),
            s.w_part.len()
        );
    }

    // Levi-nondegenerate quadric: the chain stops immediately.
    let quadric = LeviModel::Siegel(SiegelModel::new(1, 2, 0, 0).unwrap());
    println!(
        "hyperquadric Sigma^{{1,2}}_{{0,0}}: dims {:?}",
        levi_chain(&quadric, 1).unwrap().dims
    );
}
