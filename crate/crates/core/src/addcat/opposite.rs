//! The opposite presentation: Hom spaces transposed, composition reversed,
//! suspension inverted.

use super::category::PresentedCategory;
use super::morphism::Morphism;
use super::suspension::SuspensionFunctor;
use super::CatError;
use crate::ffmat::FpMatrix;

/// Builds the opposite presentation. Generators and basis names are reused;
/// `Hom_op(g, h) = Hom(h, g)` and composition is reversed.
pub fn opposite_category(cat: &PresentedCategory) -> PresentedCategory {
    let n = cat.gen_count();
    let gens = cat.gen_names().to_vec();
    let mut hom_dims = vec![vec![0; n]; n];
    let mut basis_names = vec![vec![Vec::new(); n]; n];
    for g in 0..n {
        for h in 0..n {
            hom_dims[g][h] = cat.hom_dim(h, g);
            basis_names[g][h] = cat.basis_names(h, g).to_vec();
        }
    }
    // comp_op[a][b][c][j][i] = (v_j ∘_op u_i) with u_i in Hom_op(a,b) = Hom(b,a)
    // and v_j in Hom_op(b,c) = Hom(c,b); in the base category this is u_i ∘ v_j.
    let mut comp = vec![vec![vec![Vec::new(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let rows = cat.hom_dim(c, b);
                let cols = cat.hom_dim(b, a);
                let mut table = vec![vec![Vec::new(); cols]; rows];
                #[allow(clippy::needless_range_loop)]
                for j in 0..rows {
                    for i in 0..cols {
                        // u_i: b -> a in base, v_j: c -> b in base; composite u_i ∘ v_j: c -> a
                        let mut u = vec![0u32; cols];
                        u[i] = 1;
                        let mut v = vec![0u32; rows];
                        v[j] = 1;
                        table[j][i] = cat.compose_coords(c, b, a, &u, &v);
                    }
                }
                comp[a][b][c] = table;
            }
        }
    }
    let ids = (0..n).map(|g| cat.id_coords(g).to_vec()).collect();
    PresentedCategory::new(cat.modulus(), gens, hom_dims, basis_names, comp, ids)
        .expect("opposite of a valid presentation is valid")
}

/// Views a morphism `x → y` of the base category as the morphism `y → x` of
/// the opposite presentation (same coordinates, transposed block grid).
pub fn opposite_morphism(f: &Morphism) -> Morphism {
    let dom = f.cod().clone();
    let cod = f.dom().clone();
    let mut blocks = Vec::with_capacity(dom.len() * cod.len());
    for ci in 0..cod.len() {
        for di in 0..dom.len() {
            // block (ci, di) of f^op lives in Hom_op(dom[di], cod[ci]) =
            // Hom(cod[ci], dom[di]), i.e. block (di, ci) of f.
            blocks.push(f.block(di, ci).to_vec());
        }
    }
    Morphism::from_blocks(dom, cod, blocks)
}

/// The suspension of the opposite structure is the inverse automorphism.
pub fn opposite_suspension(
    cat: &PresentedCategory,
    op: &PresentedCategory,
    sus: &SuspensionFunctor,
) -> Result<SuspensionFunctor, CatError> {
    let n = cat.gen_count();
    let perm: Vec<usize> = (0..n).map(|g| sus.gen_preimage(g)).collect();
    // map on Hom_op(g,h) = Hom(h,g): must land in Hom_op(σ⁻¹g, σ⁻¹h) =
    // Hom(σ⁻¹h, σ⁻¹g); that is the inverse of the base map on Hom(σ⁻¹h, σ⁻¹g).
    let mut maps = vec![Vec::new(); n];
    #[allow(clippy::needless_range_loop)]
    for g in 0..n {
        for h in 0..n {
            let a = sus.gen_preimage(h);
            let b = sus.gen_preimage(g);
            let base = sus.hom_map(a, b);
            let inv: FpMatrix = base.inverse().expect("suspension maps are invertible");
            maps[g].push(inv);
        }
    }
    SuspensionFunctor::new(op, perm, maps)
}
