//! Fourier–Mukai image of `O_Y(a)`, `-n+1 <= a <= 0`, under `KN_0`.
//!
//! The kernel `O_{Y ×_X Y⁺}` sits in triangles with `O_Ỹ`, `O_{P×P∨}` and
//! `O_E`; the images of `O_Y(a)` under the pieces are assembled from
//! `RΓ(P, O(a))`, `RΓ(P, O(a - 1))` and the pushforwards `Rp̃_* O_E(kE)`.

use num_bigint::BigInt;
use serde::Serialize;

use super::{kclass_jp_dual, reduce_line_on, KClass};
use crate::bwb::{cohomology, line_bundle};
use crate::cohengine::Side;

/// `mult` copies of `object[shift]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftedObject {
    pub object: ObjectOnYPlus,
    pub shift: i64,
    pub mult: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ObjectOnYPlus {
    /// `O_{Y⁺}(a)`
    Line(i64),
    /// `j'_* O_{P∨}(b)`
    ZeroSection(i64),
}

impl ShiftedObject {
    fn kclass(&self, n: usize) -> KClass {
        let base = match self.object {
            ObjectOnYPlus::Line(a) => reduce_line_on(Side::YPlus, a, n),
            ObjectOnYPlus::ZeroSection(b) => kclass_jp_dual(b, n),
        };
        let sign = if self.shift.rem_euclid(2) == 0 { 1 } else { -1 };
        base.scale(&BigInt::from(sign * self.mult as i64))
    }
}

fn kclass_of(terms: &[ShiftedObject], n: usize) -> KClass {
    terms
        .iter()
        .fold(KClass::zero(n, Side::YPlus), |acc, t| acc + t.kclass(n))
}

/// `RΓ(P, O(t)) ⊗ object`, cohomology in degree `q` placed in shift `-q`.
fn sections_tensor(n: usize, t: i64, object: ObjectOnYPlus) -> Vec<ShiftedObject> {
    cohomology(&line_bundle(n, t).expect("n >= 2"))
        .entries()
        .iter()
        .map(|(&q, &d)| ShiftedObject {
            object,
            shift: -(q as i64),
            mult: d as u64,
        })
        .collect()
}

/// `Rp̃_* O_E(kE)` restricted to fibres is `RΓ(P^{n-2}, O(-k))`; it is
/// nonzero only for `k = n - 1`, where the global twist is `j'_* O(-n)[-n+2]`.
fn pushforward_exceptional(n: usize, k: i64) -> Vec<ShiftedObject> {
    let fibre = if n >= 3 {
        cohomology(&line_bundle(n - 1, -k).expect("n - 1 >= 2"))
    } else {
        crate::bwb::CohTable::from_pairs(&[(0, 1)])
    };
    if fibre.is_zero() {
        return Vec::new();
    }
    assert_eq!(fibre.entries().len(), 1, "fibre cohomology in one degree");
    let (&q, &d) = fibre.entries().iter().next().expect("nonempty");
    assert_eq!((q as i64, d), (n as i64 - 2, 1), "top fibre cohomology of O(-n+1)");
    vec![ShiftedObject {
        object: ObjectOnYPlus::ZeroSection(-(n as i64)),
        shift: -(n as i64) + 2,
        mult: 1,
    }]
}

fn twist_terms(terms: Vec<ShiftedObject>, t: i64) -> Vec<ShiftedObject> {
    terms
        .into_iter()
        .map(|mut s| {
            s.object = match s.object {
                ObjectOnYPlus::Line(a) => ObjectOnYPlus::Line(a + t),
                ObjectOnYPlus::ZeroSection(b) => ObjectOnYPlus::ZeroSection(b + t),
            };
            s
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnImageRow {
    pub a: i64,
    /// Image under the kernel `O_{P×P∨}`.
    pub phi_product: Vec<ShiftedObject>,
    /// Image under `O_{P×P∨}(-1, -1)`.
    pub phi_twisted: Vec<ShiftedObject>,
    /// Image under `O_E`.
    pub phi_e: Vec<ShiftedObject>,
    /// Image under `O_Ỹ`.
    pub phi_ytilde: Vec<ShiftedObject>,
    pub kclass: KClass,
    pub expected: KClass,
    /// Whether the constituent pattern and the K-class agree with the table.
    pub matches: bool,
}

fn single(object: ObjectOnYPlus, shift: i64) -> Vec<ShiftedObject> {
    vec![ShiftedObject { object, shift, mult: 1 }]
}

pub fn kn0_image_table(n: usize) -> Vec<KnImageRow> {
    let top = n as i64;
    (-top + 1..=0)
        .map(|a| {
            let phi_product = sections_tensor(n, a, ObjectOnYPlus::ZeroSection(0));
            let phi_twisted = sections_tensor(n, a - 1, ObjectOnYPlus::ZeroSection(-1));
            // O(-1,-1) -> O_{P×P∨} -> O_E
            let phi_e = if phi_twisted.is_empty() {
                phi_product.clone()
            } else if phi_product.is_empty() {
                phi_twisted
                    .iter()
                    .map(|s| ShiftedObject { shift: s.shift + 1, ..s.clone() })
                    .collect()
            } else {
                let mut all = phi_product.clone();
                all.extend(phi_twisted.iter().map(|s| ShiftedObject { shift: s.shift + 1, ..s.clone() }));
                all
            };
            let m = -a;
            let mut pushed = single(ObjectOnYPlus::Line(0), 0);
            for k in 1..=m {
                pushed.extend(pushforward_exceptional(n, k));
            }
            let phi_ytilde = twist_terms(pushed, -a);
            // KN_0 -> Φ_Ỹ ⊕ Φ_{P×P∨} -> Φ_E
            let kclass = kclass_of(&phi_ytilde, n) + kclass_of(&phi_product, n) - kclass_of(&phi_e, n);
            let expected = reduce_line_on(Side::YPlus, -a, n);

            let want_product = if a == 0 { single(ObjectOnYPlus::ZeroSection(0), 0) } else { Vec::new() };
            let want_twisted = if a == -top + 1 {
                single(ObjectOnYPlus::ZeroSection(-1), -top + 1)
            } else {
                Vec::new()
            };
            let want_e = if a == 0 {
                single(ObjectOnYPlus::ZeroSection(0), 0)
            } else if a == -top + 1 {
                single(ObjectOnYPlus::ZeroSection(-1), -top + 2)
            } else {
                Vec::new()
            };
            let matches = phi_product == want_product
                && phi_twisted == want_twisted
                && phi_e == want_e
                && kclass == expected;
            KnImageRow {
                a,
                phi_product,
                phi_twisted,
                phi_e,
                phi_ytilde,
                kclass,
                expected,
                matches,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_match_for_small_ranks() {
        for n in 2..=6 {
            for row in kn0_image_table(n) {
                assert!(row.matches, "n={n} {row:?}");
            }
        }
    }

    #[test]
    fn last_row_has_zero_section_correction() {
        let rows = kn0_image_table(4);
        let last = rows.first().unwrap();
        assert_eq!(last.a, -3);
        assert_eq!(last.phi_ytilde.len(), 2);
        assert_eq!(last.phi_ytilde[1].object, ObjectOnYPlus::ZeroSection(-1));
        assert_eq!(last.phi_ytilde[1].shift, -2);
    }
}
