//! Binary forms `sum c_k L^(d-k) M^k`, used to restrict forms to a
//! parametrized line or curve and to read off coefficients exactly.

use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BinaryForm {
    pub coeffs: Vec<FieldElement>,
}

impl BinaryForm {
    pub fn linear(l: FieldElement, m: FieldElement) -> Self {
        BinaryForm { coeffs: vec![l, m] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        let field = self.coeffs[0].field();
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "forms of different degree");
        BinaryForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    pub fn zero(field: FieldSpec, degree: usize) -> Self {
        BinaryForm { coeffs: vec![field.zero(); degree + 1] }
    }
}
