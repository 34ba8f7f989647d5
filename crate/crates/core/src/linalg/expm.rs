//! Matrix exponential by scaling and squaring with a fixed degree-13 Padé
//! approximant (Higham 2005).

#[allow(unused_imports)] // inherent once std is linked
use num_traits::Float;

use super::{CMatrix, Lu};

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Largest 1-norm for which the degree-13 approximant is accurate to unit
/// roundoff without scaling.
const THETA13: f64 = 5.371920351148152;

pub fn expm(a: &CMatrix) -> CMatrix {
    let n = a.dim();
    if n == 0 {
        return CMatrix::zeros(0);
    }
    let norm = a.norm_1();
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a.scale_re(2.0f64.powi(-squarings));
    let mut result = pade13(&scaled);
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}

fn pade13(a: &CMatrix) -> CMatrix {
    let b = &PADE13;
    let ident = CMatrix::identity(a.dim());
    let a2 = a.matmul(a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);
    let lin = |m6: f64, m4: f64, m2: f64, m0: f64| {
        let mut acc = a6.scale_re(m6);
        acc = &acc + &a4.scale_re(m4);
        acc = &acc + &a2.scale_re(m2);
        &acc + &ident.scale_re(m0)
    };
    let u_inner = a6.matmul(&lin(b[13], b[11], b[9], 0.0));
    let u = a.matmul(&(&u_inner + &lin(b[7], b[5], b[3], b[1])));
    let v_inner = a6.matmul(&lin(b[12], b[10], b[8], 0.0));
    let v = &v_inner + &lin(b[6], b[4], b[2], b[0]);
    let p = &v + &u;
    let q = &v - &u;
    // q is well conditioned for ||a||_1 <= THETA13
    Lu::new(&q).expect("Pade denominator is nonsingular").solve(&p)
}
