//! Shared samplers and independent oracles for the integration suites.
//!
//! The oracles deliberately avoid the code paths they check: the
//! trilinear form is expanded over explicit permutations instead of
//! inclusion–exclusion, the quartic linearization is cross-checked with a
//! hand-differentiated directional derivative, and the tensor-language
//! dual/invariant are recomputed by literal index-tuple contraction.

#![allow(dead_code)]

use qent::fts::FtsGenerator;
use qent::jordan::{cross, cubic_norm, sharp, trace_form, JordanElement};
use qent::scalar::Scalar;
use qent::state::{LocalMatrix, QubitState};
use qent::symtensor::{NTransform, SymTensorState};
use qent::{EntanglementClass, FtsElement, SeparatedQubit};
use rand::Rng;

/// Brute-force symmetric trilinear form: (1/6) Σ_σ X_{σ1} Y_{σ2} Z_{σ3}.
pub fn trilinear_oracle(x: &JordanElement, y: &JordanElement, z: &JordanElement) -> Scalar {
    const PERMS: [[usize; 3]; 6] = [
        [1, 2, 3],
        [1, 3, 2],
        [2, 1, 3],
        [2, 3, 1],
        [3, 1, 2],
        [3, 2, 1],
    ];
    let mut sum = Scalar::zero();
    for p in PERMS {
        sum = sum + x.component(p[0]) * y.component(p[1]) * z.component(p[2]);
    }
    sum * Scalar::from_ratio(1, 6)
}

/// Hand-differentiated directional derivative D_z q(x).
///
/// With P = αβ − Tr(A,B) and K = αN(A) + βN(B) − Tr(A♯,B♯),
/// q = −2P² − 8K, so D_z q = −4P·D_zP − 8·D_zK, using
/// D_C N(A) = Tr(A♯, C) and D_C (A♯) = A×C.
pub fn quartic_directional_oracle(x: &FtsElement, z: &FtsElement) -> Scalar {
    let p = x.alpha() * x.beta() - trace_form(x.a(), x.b());
    let dp = z.alpha() * x.beta() + x.alpha() * z.beta()
        - trace_form(z.a(), x.b())
        - trace_form(x.a(), z.b());
    let dk = z.alpha() * cubic_norm(x.a())
        + x.alpha() * trace_form(&sharp(x.a()), z.a())
        + z.beta() * cubic_norm(x.b())
        + x.beta() * trace_form(&sharp(x.b()), z.b())
        - trace_form(&cross(x.a(), z.a()), &sharp(x.b()))
        - trace_form(&sharp(x.a()), &cross(x.b(), z.b()));
    p * dp * Scalar::from_int(-4) + dk * Scalar::from_int(-8)
}

/// Literal contraction Σ_k (−1)^k/k! A_[k] B^[k] over all k-index tuples.
pub fn bilinear_tuple_oracle(t: &SymTensorState, u: &SymTensorState) -> Scalar {
    let n = t.qubit_count();
    assert_eq!(n, u.qubit_count());
    let full = (1u32 << n) - 1;
    let mut total = Scalar::zero();
    let mut factorial = 1i64;
    for k in 0..=n {
        if k > 0 {
            factorial *= k as i64;
        }
        let mut tuple = vec![1usize; k];
        let mut sum = Scalar::zero();
        loop {
            // symmetric tensors vanish on diagonals
            let mut mask = 0u32;
            let mut repeated = false;
            for &index in &tuple {
                let bit = 1u32 << (n - index);
                if mask & bit != 0 {
                    repeated = true;
                    break;
                }
                mask |= bit;
            }
            if !repeated {
                sum = sum + t.value(mask) * u.value(full ^ mask);
            }
            // next tuple in lexicographic order
            let mut position = k;
            loop {
                if position == 0 {
                    break;
                }
                tuple[position - 1] += 1;
                if tuple[position - 1] <= n {
                    break;
                }
                tuple[position - 1] = 1;
                position -= 1;
            }
            if position == 0 {
                break;
            }
        }
        let signed = if k % 2 == 1 { -sum } else { sum };
        total = total + signed * Scalar::from_ratio(1, factorial);
    }
    total
}

/// Literal dualization (1/p!) d^{j…k…} A_{k…}: enumerates every p-tuple
/// over {1..n}, keeps those whose indices complete the upstairs positions
/// of `mask` to a permutation of 1..n (where d = |ε| is one), and sums the
/// corresponding block-p values.
pub fn dual_tuple_oracle(t: &SymTensorState, p: usize, mask: u32) -> Scalar {
    let n = t.qubit_count();
    let mut factorial = 1i64;
    for i in 1..=p {
        factorial *= i as i64;
    }
    let mut sum = Scalar::zero();
    let mut tuple = vec![1usize; p];
    loop {
        let mut combined = mask;
        let mut degenerate = false;
        let mut tuple_mask = 0u32;
        for &index in &tuple {
            let bit = 1u32 << (n - index);
            if combined & bit != 0 {
                degenerate = true;
                break;
            }
            combined |= bit;
            tuple_mask |= bit;
        }
        if !degenerate && combined == (1u32 << n) - 1 {
            sum = sum + t.value(tuple_mask);
        }
        let mut position = p;
        loop {
            if position == 0 {
                break;
            }
            tuple[position - 1] += 1;
            if tuple[position - 1] <= n {
                break;
            }
            tuple[position - 1] = 1;
            position -= 1;
        }
        if position == 0 {
            break;
        }
    }
    sum * Scalar::from_ratio(1, factorial)
}

/// Random determinant-one local matrix with exact entries.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> LocalMatrix {
    let a = Scalar::random_exact_nonzero(rng);
    let b = Scalar::random_exact(rng);
    let c = Scalar::random_exact(rng);
    let d = (Scalar::one() + &b * &c) / &a;
    LocalMatrix([[a, b], [c, d]])
}

/// Three independent determinant-one local matrices.
pub fn random_sl2_triple<R: Rng + ?Sized>(rng: &mut R) -> Vec<LocalMatrix> {
    (0..3).map(|_| random_sl2(rng)).collect()
}

/// Random generator word of the given length.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, length: usize) -> Vec<FtsGenerator> {
    (0..length)
        .map(|_| match rng.random_range(0..4) {
            0 => FtsGenerator::Phi(JordanElement::random_exact(rng)),
            1 => FtsGenerator::Psi(JordanElement::random_exact(rng)),
            2 => FtsGenerator::Tau(
                Scalar::random_exact_nonzero(rng),
                Scalar::random_exact_nonzero(rng),
                Scalar::random_exact_nonzero(rng),
            ),
            _ => FtsGenerator::Zed,
        })
        .collect()
}

/// The four nonzero table classes in rank order.
pub fn table_classes() -> [EntanglementClass; 4] {
    [
        EntanglementClass::Separable,
        EntanglementClass::Biseparable(SeparatedQubit::A),
        EntanglementClass::W,
        EntanglementClass::Ghz(Scalar::from_int(-8)),
    ]
}

/// A random SLOCC image of the table representative of `class`.
pub fn random_class_state<R: Rng + ?Sized>(class: &EntanglementClass, rng: &mut R) -> QubitState {
    qent::representative(class)
        .apply_slocc(&random_sl2_triple(rng))
        .expect("determinant-one matrices are invertible")
}

/// Reverses a three-parameter list between the per-position tensor
/// convention and the Jordan slot convention (slot k ↔ position 4−k).
pub fn reverse3(params: &[Scalar; 3]) -> JordanElement {
    JordanElement::new(params[2].clone(), params[1].clone(), params[0].clone())
}

/// The triple-system torus parameters matching TauN(λ) through the
/// dictionary: slot k scales by λ_{4−k}⁻¹ · Π_{j≠4−k} λ_j.
pub fn tau_dictionary(lambda: &[Scalar; 3]) -> (Scalar, Scalar, Scalar) {
    let product = &(&lambda[0] * &lambda[1]) * &lambda[2];
    let slot = |position: usize| {
        let l = &lambda[position - 1];
        &product / &(l * l)
    };
    (slot(3), slot(2), slot(1))
}

/// Random per-qubit transformation of each kind for n qubits.
pub fn random_ntransform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> NTransform {
    match rng.random_range(0..3) {
        0 => NTransform::PhiN((0..n).map(|_| Scalar::random_exact(rng)).collect()),
        1 => NTransform::PsiN((0..n).map(|_| Scalar::random_exact(rng)).collect()),
        _ => NTransform::TauN((0..n).map(|_| Scalar::random_exact_nonzero(rng)).collect()),
    }
}
