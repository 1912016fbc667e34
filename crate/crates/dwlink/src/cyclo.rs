//! Exact arithmetic in the cyclotomic integer ring `Z[ζ_N]` (default `N = 275`).
//!
//! Working values ([`Cyclo`]) are integer coefficient vectors in the cyclic
//! basis `Z[x]/(x^N - 1)`, where multiplication is plain cyclic convolution
//! and no reduction is needed mid-computation. Equality, hashing and
//! serialization go through the canonical form ([`CanonicalCyclo`]): the
//! remainder modulo the N-th cyclotomic polynomial, a sparse vector over the
//! power basis `ζ^0 .. ζ^{φ(N)-1}`.

/// `Φ_n` as a low-to-high coefficient vector (monic, integer).
fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
        let dn = den.len() - 1;
        let qlen = num.len() - dn;
        let mut rem = num.to_vec();
        let mut quot = vec![0i64; qlen];
        for k in (0..qlen).rev() {
            let c = rem[k + dn];
            quot[k] = c;
            if c != 0 {
                for (t, &dc) in den.iter().enumerate() {
                    rem[k + t] -= c * dc;
                }
            }
        }
        assert!(rem.iter().all(|&c| c == 0), "non-exact polynomial division");
        quot
    }
    let mut phi_n = Vec::new();
    let mut cache: Vec<(usize, Vec<i64>)> = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mut num = vec![0i64; d + 1];
        num[0] = -1;
        num[d] = 1;
        for (dd, poly) in &cache {
            if d % dd == 0 {
                num = poly_exact_div(&num, poly);
            }
        }
        if d == n {
            phi_n = num;
        } else {
            cache.push((d, num));
        }
    }
    phi_n
}

/// The ring `Z[ζ_N]`, holding the reduction data for canonical forms.
#[derive(Debug)]
pub struct CycloRing {
    order: usize,
    degree: usize,
    /// sparse canonical expansion of `ζ^e` for `e` in `degree..order`
    red_rows: Vec<Vec<(u32, i64)>>,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl CycloRing {
    pub fn new(order: usize) -> Self {
        assert!(order >= 2);
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        // x^degree = -(phi - x^degree); higher powers by repeated shift-reduce
        let mut rows_dense: Vec<Vec<i64>> = Vec::with_capacity(order - degree);
        let mut cur: Vec<i64> = (0..degree).map(|k| -phi[k]).collect();
        rows_dense.push(cur.clone());
        for _e in degree + 1..order {
            let top = cur[degree - 1];
            let mut nxt = vec![0i64; degree];
            for k in (1..degree).rev() {
                nxt[k] = cur[k - 1];
            }
            if top != 0 {
                for k in 0..degree {
                    nxt[k] -= top * phi[k];
                }
            }
            rows_dense.push(nxt.clone());
            cur = nxt;
        }
        let red_rows = rows_dense
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (k as u32, c))
                    .collect()
            })
            .collect();
        let tau = std::f64::consts::TAU;
        let cos = (0..order).map(|e| (tau * e as f64 / order as f64).cos()).collect();
        let sin = (0..order).map(|e| (tau * e as f64 / order as f64).sin()).collect();
        CycloRing {
            order,
            degree,
            red_rows,
            cos,
            sin,
        }
    }

    /// The root-of-unity order `N`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `φ(N)`, the rank of the ring as a `Z`-module.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&self) -> Cyclo {
        Cyclo {
            coeffs: vec![0; self.order],
        }
    }

    pub fn integer(&self, c: i64) -> Cyclo {
        let mut v = self.zero();
        v.coeffs[0] = c;
        v
    }

    /// `ζ^e`, exponent taken mod N.
    pub fn root(&self, e: i64) -> Cyclo {
        let mut v = self.zero();
        v.coeffs[e.rem_euclid(self.order as i64) as usize] = 1;
        v
    }

    pub fn add_assign(&self, a: &mut Cyclo, b: &Cyclo) {
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
    }

    pub fn sub(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    /// Cyclic convolution, iterating only the nonzero terms of `a`.
    pub fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        let n = self.order;
        let mut out = vec![0i64; n];
        for (e, &c) in a.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let split = n - e;
            for f in 0..split {
                out[e + f] += c * b.coeffs[f];
            }
            for f in split..n {
                out[e + f - n] += c * b.coeffs[f];
            }
        }
        Cyclo { coeffs: out }
    }

    /// `acc += scale * a * b` on sparse term lists (exponents already mod N).
    pub fn mul_sparse_into(
        &self,
        acc: &mut [i64],
        a: &[(u32, i64)],
        b: &[(u32, i64)],
        scale: i64,
    ) {
        let n = self.order as u32;
        for &(ea, ca) in a {
            let c = ca * scale;
            for &(eb, cb) in b {
                let mut e = ea + eb;
                if e >= n {
                    e -= n;
                }
                acc[e as usize] += c * cb;
            }
        }
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self, a: &Cyclo) -> Cyclo {
        let n = self.order;
        let mut out = vec![0i64; n];
        for (e, &c) in a.coeffs.iter().enumerate() {
            out[(n - e) % n] += c;
        }
        Cyclo { coeffs: out }
    }

    /// Reduction to the power basis `ζ^0..ζ^{φ(N)-1}`.
    pub fn canonicalize(&self, a: &Cyclo) -> CanonicalCyclo {
        self.canonicalize_slice(&a.coeffs)
    }

    pub fn canonicalize_slice(&self, coeffs: &[i64]) -> CanonicalCyclo {
        debug_assert_eq!(coeffs.len(), self.order);
        let mut out = vec![0i64; self.degree];
        out.copy_from_slice(&coeffs[..self.degree]);
        for e in self.degree..self.order {
            let c = coeffs[e];
            if c != 0 {
                for &(k, w) in &self.red_rows[e - self.degree] {
                    out[k as usize] += c * w;
                }
            }
        }
        CanonicalCyclo {
            terms: out
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (k as u32, c))
                .collect(),
        }
    }

    pub fn is_zero(&self, a: &Cyclo) -> bool {
        self.canonicalize(a).is_zero()
    }

    /// Floating-point check value `(re, im)`.
    pub fn approx(&self, a: &Cyclo) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, &c) in a.coeffs.iter().enumerate() {
            if c != 0 {
                re += c as f64 * self.cos[e];
                im += c as f64 * self.sin[e];
            }
        }
        (re, im)
    }

    pub fn approx_canonical(&self, a: &CanonicalCyclo) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for &(e, c) in &a.terms {
            re += c as f64 * self.cos[e as usize];
            im += c as f64 * self.sin[e as usize];
        }
        (re, im)
    }

    pub fn from_canonical(&self, a: &CanonicalCyclo) -> Cyclo {
        let mut v = self.zero();
        for &(e, c) in &a.terms {
            v.coeffs[e as usize] = c;
        }
        v
    }
}

/// A working value in the cyclic basis. Deliberately not `PartialEq`:
/// semantic equality requires canonicalization through the ring.
#[derive(Debug, Clone)]
pub struct Cyclo {
    coeffs: Vec<i64>,
}

impl Cyclo {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn scale_assign(&mut self, k: i64) {
        for c in &mut self.coeffs {
            *c *= k;
        }
    }

    /// Nonzero `(exponent, coefficient)` terms.
    pub fn sparse(&self) -> Vec<(u32, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (e as u32, c))
            .collect()
    }
}

/// Canonically reduced element: sorted sparse terms over `ζ^0..ζ^{φ(N)-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CanonicalCyclo {
    terms: Vec<(u32, i64)>,
}

impl CanonicalCyclo {
    pub fn integer(c: i64) -> Self {
        if c == 0 {
            CanonicalCyclo { terms: vec![] }
        } else {
            CanonicalCyclo { terms: vec![(0, c)] }
        }
    }

    /// Rebuilds from `(exponent, coefficient)` terms (deduplicated, sorted,
    /// zeros dropped). The exponents must already be canonical-basis ones.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut map: std::collections::BTreeMap<u32, i64> = std::collections::BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c;
        }
        CanonicalCyclo {
            terms: map.into_iter().filter(|&(_, c)| c != 0).collect(),
        }
    }

    pub fn terms(&self) -> &[(u32, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(m)` when the value is the rational integer `m`.
    pub fn as_integer(&self) -> Option<i64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, c)] => Some(*c),
            _ => None,
        }
    }

    /// Exact division by a nonzero integer, or `None` if any coefficient
    /// is not divisible.
    pub fn exact_div(&self, k: i64) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(e, c) in &self.terms {
            if c % k != 0 {
                return None;
            }
            terms.push((e, c / k));
        }
        Some(CanonicalCyclo { terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn phi_values() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(11).len(), 11);
        // phi(275) = 200 and Phi_275 = Phi_55(x^5) has coefficients in {-1,0,1}
        let phi = cyclotomic_polynomial(275);
        assert_eq!(phi.len(), 201);
        assert!(phi.iter().all(|&c| c.abs() <= 1));
        let phi55 = cyclotomic_polynomial(55);
        for (k, &c) in phi.iter().enumerate() {
            let want = if k % 5 == 0 { phi55[k / 5] } else { 0 };
            assert_eq!(c, want);
        }
    }

    #[test]
    fn ring_basics() {
        let ring = CycloRing::new(275);
        assert_eq!(ring.degree(), 200);
        // zeta^275 = 1
        let z = ring.root(1);
        let mut acc = ring.integer(1);
        for _ in 0..275 {
            acc = ring.mul(&acc, &z);
        }
        assert_eq!(ring.canonicalize(&acc), CanonicalCyclo::integer(1));
        // 1 + zeta_5 + ... + zeta_5^4 = 0 (zeta_5 = zeta^55)
        let mut s = ring.zero();
        for k in 0..5 {
            let r = ring.root(55 * k);
            ring.add_assign(&mut s, &r);
        }
        assert!(ring.is_zero(&s));
        // conj(zeta^e) * zeta^e = 1
        let v = ring.root(123);
        let prod = ring.mul(&v, &ring.conj(&v));
        assert_eq!(ring.canonicalize(&prod).as_integer(), Some(1));
    }

    #[test]
    fn canonical_distinguishes_roots() {
        let ring = CycloRing::new(275);
        let mut seen = std::collections::HashSet::new();
        for e in 0..275 {
            assert!(seen.insert(ring.canonicalize(&ring.root(e))));
        }
    }

    #[test]
    fn exact_division() {
        let a = CanonicalCyclo { terms: vec![(0, 6), (3, -9)] };
        assert_eq!(a.exact_div(3).unwrap().terms(), &[(0, 2), (3, -3)]);
        assert!(a.exact_div(4).is_none());
    }

    proptest! {
        #[test]
        fn mul_commutative_and_matches_sparse(av in proptest::collection::vec(-3i64..4, 8),
                                              bv in proptest::collection::vec(-3i64..4, 8),
                                              ae in proptest::collection::vec(0usize..275, 8),
                                              be in proptest::collection::vec(0usize..275, 8)) {
            let ring = CycloRing::new(275);
            let mut a = ring.zero();
            let mut b = ring.zero();
            for (&e, &c) in ae.iter().zip(&av) { a.coeffs[e] += c; }
            for (&e, &c) in be.iter().zip(&bv) { b.coeffs[e] += c; }
            let ab = ring.mul(&a, &b);
            let ba = ring.mul(&b, &a);
            prop_assert_eq!(ring.canonicalize(&ab), ring.canonicalize(&ba));
            let mut acc = vec![0i64; 275];
            ring.mul_sparse_into(&mut acc, &a.sparse(), &b.sparse(), 1);
            prop_assert_eq!(ring.canonicalize_slice(&acc), ring.canonicalize(&ab));
        }

        #[test]
        fn conj_is_involutive_ring_hom(av in proptest::collection::vec(-3i64..4, 6),
                                       ae in proptest::collection::vec(0usize..275, 6),
                                       bv in proptest::collection::vec(-3i64..4, 6),
                                       be in proptest::collection::vec(0usize..275, 6)) {
            let ring = CycloRing::new(275);
            let mut a = ring.zero();
            let mut b = ring.zero();
            for (&e, &c) in ae.iter().zip(&av) { a.coeffs[e] += c; }
            for (&e, &c) in be.iter().zip(&bv) { b.coeffs[e] += c; }
            let cc = ring.conj(&ring.conj(&a));
            prop_assert_eq!(ring.canonicalize(&cc), ring.canonicalize(&a));
            let lhs = ring.conj(&ring.mul(&a, &b));
            let rhs = ring.mul(&ring.conj(&a), &ring.conj(&b));
            prop_assert_eq!(ring.canonicalize(&lhs), ring.canonicalize(&rhs));
        }
    }
}
