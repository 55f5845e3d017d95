//! The 3-qubit cubic Jordan algebra ℂ⊕ℂ⊕ℂ.
//!
//! Elements are triples (A₁, A₂, A₃) with cubic norm N(A) = A₁A₂A₃ and
//! base point 𝟙 = (1,1,1). The derived maps — trace, spur, trace bilinear
//! form, quadratic adjoint ♯ and the linearized product × — are built from
//! the generic cubic construction (polarizing N) and coincide with the
//! closed componentwise forms, which is checked in tests rather than
//! assumed. Nonzero elements carry an invariant rank in {1, 2, 3}:
//!
//! ```text
//! rank 1 ⇔ A♯ = 0        (exactly one nonzero component)
//! rank 2 ⇔ N(A) = 0, A♯ ≠ 0   (exactly two)
//! rank 3 ⇔ N(A) ≠ 0           (all three)
//! ```
//!
//! Rank 0 is assigned to the zero element so the reduction algorithm can
//! work with total functions.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Element of the 3-qubit cubic Jordan algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanElement {
    components: [Scalar; 3],
}

/// Rank of a Jordan algebra element (0 reserved for the zero element).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum JordanRank {
    Zero,
    One,
    Two,
    Three,
}

impl JordanRank {
    pub fn as_u8(self) -> u8 {
        match self {
            JordanRank::Zero => 0,
            JordanRank::One => 1,
            JordanRank::Two => 2,
            JordanRank::Three => 3,
        }
    }
}

impl JordanElement {
    pub fn new(a1: Scalar, a2: Scalar, a3: Scalar) -> Self {
        JordanElement {
            components: [a1, a2, a3],
        }
    }

    pub fn zero() -> Self {
        JordanElement::new(Scalar::zero(), Scalar::zero(), Scalar::zero())
    }

    /// The base point c = 𝟙 = (1, 1, 1), the multiplicative identity.
    pub fn identity() -> Self {
        JordanElement::new(Scalar::one(), Scalar::one(), Scalar::one())
    }

    /// Standard basis element e₁, e₂ or e₃ (`slot` is 1-based).
    pub fn basis(slot: usize) -> Self {
        let mut e = JordanElement::zero();
        e.components[slot - 1] = Scalar::one();
        e
    }

    /// One-hot element `s·e_slot` (`slot` is 1-based).
    pub fn one_hot(slot: usize, s: Scalar) -> Self {
        let mut e = JordanElement::zero();
        e.components[slot - 1] = s;
        e
    }

    /// Component by 1-based slot.
    pub fn component(&self, slot: usize) -> &Scalar {
        &self.components[slot - 1]
    }

    pub fn components(&self) -> &[Scalar; 3] {
        &self.components
    }

    /// Largest |component|, the context scale for approximate zero tests.
    pub fn scale(&self) -> f64 {
        self.components
            .iter()
            .map(|s| s.abs_f64())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero_scaled(self.scale())
    }

    pub fn is_zero_scaled(&self, scale: f64) -> bool {
        self.components.iter().all(|s| s.is_zero_scaled(scale))
    }

    pub fn map<F: FnMut(&Scalar) -> Scalar>(&self, mut f: F) -> JordanElement {
        JordanElement::new(
            f(&self.components[0]),
            f(&self.components[1]),
            f(&self.components[2]),
        )
    }

    pub fn add(&self, other: &JordanElement) -> JordanElement {
        JordanElement::new(
            &self.components[0] + &other.components[0],
            &self.components[1] + &other.components[1],
            &self.components[2] + &other.components[2],
        )
    }

    pub fn sub(&self, other: &JordanElement) -> JordanElement {
        JordanElement::new(
            &self.components[0] - &other.components[0],
            &self.components[1] - &other.components[1],
            &self.components[2] - &other.components[2],
        )
    }

    pub fn neg(&self) -> JordanElement {
        self.map(|s| -s)
    }

    pub fn scaled(&self, k: &Scalar) -> JordanElement {
        self.map(|s| s * k)
    }

    /// Random element with small exact rational components.
    pub fn random_exact<R: Rng + ?Sized>(rng: &mut R) -> JordanElement {
        JordanElement::new(
            Scalar::random_exact(rng),
            Scalar::random_exact(rng),
            Scalar::random_exact(rng),
        )
    }
}

impl fmt::Display for JordanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.components[0], self.components[1], self.components[2]
        )
    }
}

/// Cubic norm N(A) = A₁A₂A₃; homogeneous of degree 3.
pub fn cubic_norm(a: &JordanElement) -> Scalar {
    &(a.component(1) * a.component(2)) * a.component(3)
}

/// Full symmetric trilinear form N(X, Y, Z) with N(X, X, X) = N(X),
/// computed by the inclusion–exclusion polarization of N.
pub fn trilinear_norm(x: &JordanElement, y: &JordanElement, z: &JordanElement) -> Scalar {
    let sum = cubic_norm(&x.add(y).add(z))
        - cubic_norm(&x.add(y))
        - cubic_norm(&x.add(z))
        - cubic_norm(&y.add(z))
        + cubic_norm(x)
        + cubic_norm(y)
        + cubic_norm(z);
    sum * Scalar::from_ratio(1, 6)
}

/// Trace Tr(X) = 3N(c, c, X); for this algebra X₁ + X₂ + X₃.
pub fn trace_unary(x: &JordanElement) -> Scalar {
    &trilinear_norm(&JordanElement::identity(), &JordanElement::identity(), x)
        * &Scalar::from_int(3)
}

/// Spur form S(X, Y) = 6N(X, Y, c).
pub fn spur(x: &JordanElement, y: &JordanElement) -> Scalar {
    &trilinear_norm(x, y, &JordanElement::identity()) * &Scalar::from_int(6)
}

/// Trace bilinear form Tr(A, B) = A₁B₁ + A₂B₂ + A₃B₃.
///
/// Coincides with Tr(A)Tr(B) − S(A, B) from the cubic construction.
pub fn trace_form(a: &JordanElement, b: &JordanElement) -> Scalar {
    &(&(a.component(1) * b.component(1)) + &(a.component(2) * b.component(2)))
        + &(a.component(3) * b.component(3))
}

/// Quadratic adjoint A♯ = (A₂A₃, A₁A₃, A₁A₂).
///
/// Uniquely determined by Tr(A♯, Y) = 3N(A, A, Y) and satisfying
/// (A♯)♯ = N(A)·A.
pub fn sharp(a: &JordanElement) -> JordanElement {
    JordanElement::new(
        a.component(2) * a.component(3),
        a.component(1) * a.component(3),
        a.component(1) * a.component(2),
    )
}

/// Linearized adjoint X × Y = (X+Y)♯ − X♯ − Y♯; symmetric, with
/// X × X = 2X♯.
pub fn cross(x: &JordanElement, y: &JordanElement) -> JordanElement {
    sharp(&x.add(y)).sub(&sharp(x)).sub(&sharp(y))
}

/// Jordan product A∘B = (A₁B₁, A₂B₂, A₃B₃).
pub fn jordan_product(a: &JordanElement, b: &JordanElement) -> JordanElement {
    JordanElement::new(
        a.component(1) * b.component(1),
        a.component(2) * b.component(2),
        a.component(3) * b.component(3),
    )
}

/// Jordan product through the generic cubic construction,
/// ½(X×Y + Tr(X)Y + Tr(Y)X − S(X,Y)𝟙).
///
/// Kept alongside [`jordan_product`] as an independent route; the two are
/// required to agree exactly.
pub fn jordan_product_generic(x: &JordanElement, y: &JordanElement) -> JordanElement {
    let half = Scalar::from_ratio(1, 2);
    let mixed = cross(x, y)
        .add(&y.scaled(&trace_unary(x)))
        .add(&x.scaled(&trace_unary(y)))
        .sub(&JordanElement::identity().scaled(&spur(x, y)));
    mixed.scaled(&half)
}

/// Rank by the vanishing pattern of A, A♯ and N(A).
pub fn jordan_rank(a: &JordanElement) -> JordanRank {
    let scale = a.scale();
    if a.is_zero_scaled(scale) {
        return JordanRank::Zero;
    }
    // certificate scales follow the inputs of each certificate
    let sh = sharp(a);
    if sh.is_zero_scaled(scale) {
        return JordanRank::One;
    }
    if cubic_norm(a).is_zero_scaled(scale) {
        return JordanRank::Two;
    }
    JordanRank::Three
}

/// Diagonal structure-group element: componentwise scaling by nonzero
/// (c₁, c₂, c₃). Returns the image and the norm multiplier λ = c₁c₂c₃;
/// the element lies in the reduced structure group iff λ = 1.
pub fn str_transform(
    c: &(Scalar, Scalar, Scalar),
    a: &JordanElement,
) -> Result<(JordanElement, Scalar)> {
    for (index, s) in [&c.0, &c.1, &c.2].into_iter().enumerate() {
        if s.is_zero() {
            return Err(Error::ZeroScalingParameter { index: index + 1 });
        }
    }
    let image = JordanElement::new(
        &c.0 * a.component(1),
        &c.1 * a.component(2),
        &c.2 * a.component(3),
    );
    let lambda = &(&c.0 * &c.1) * &c.2;
    Ok((image, lambda))
}
