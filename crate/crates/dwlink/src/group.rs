//! The metacyclic group `G = Z_q ⋊_n Z_p` with `b a b⁻¹ = aⁿ`.
//!
//! Elements are residue pairs `a^i b^j`; everything here is exact integer
//! arithmetic on small moduli. The default group is `Z_11 ⋊_3 Z_5`, the
//! nonabelian group of order 55.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("q = {0} must be an odd prime")]
    BadQ(u32),
    #[error("p = {0} must be a prime dividing q - 1 = {1}")]
    BadP(u32, u32),
    #[error("n = {n} must have multiplicative order exactly {p} modulo {q}")]
    BadN { n: u32, p: u32, q: u32 },
}

fn is_prime(m: u32) -> bool {
    if m < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

/// Parameters `(q, p, n)` of `Z_q ⋊_n Z_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupSpec {
    pub q: u32,
    pub p: u32,
    pub n: u32,
}

impl Default for GroupSpec {
    fn default() -> Self {
        GroupSpec { q: 11, p: 5, n: 3 }
    }
}

impl GroupSpec {
    pub fn new(q: u32, p: u32, n: u32) -> Result<Self, GroupError> {
        if !is_prime(q) || q % 2 == 0 {
            return Err(GroupError::BadQ(q));
        }
        if !is_prime(p) || (q - 1) % p != 0 {
            return Err(GroupError::BadP(p, q - 1));
        }
        // n must have order exactly p in (Z/q)^x; p prime, so n^p = 1, n != 1 suffices.
        let n = n % q;
        let mut pw = 1u64;
        for _ in 0..p {
            pw = pw * n as u64 % q as u64;
        }
        if n <= 1 || pw != 1 {
            return Err(GroupError::BadN { n, p, q });
        }
        Ok(GroupSpec { q, p, n })
    }

    /// Order of the whole group, `q * p`.
    pub fn order(&self) -> usize {
        (self.q * self.p) as usize
    }
}

/// The element `a^i b^j`, with `0 <= i < q` and `0 <= j < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub i: u32,
    pub j: u32,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { i: 0, j: 0 };

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

/// A conjugacy class with its chosen representative; members are sorted
/// by `(j, i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: GroupElement,
    pub members: Vec<GroupElement>,
}

impl ConjugacyClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `Z_q ⋊_n Z_p` with its multiplication tables precomputed.
#[derive(Debug, Clone)]
pub struct Group {
    spec: GroupSpec,
    n_pow: Vec<u32>,     // n^j mod q
    n_inv_pow: Vec<u32>, // n^{-j} mod q
    elements: Vec<GroupElement>,
}

impl Group {
    pub fn new(spec: GroupSpec) -> Self {
        let (q, p, n) = (spec.q as u64, spec.p, spec.n as u64);
        let mut n_pow = Vec::with_capacity(p as usize);
        let mut pw = 1u64;
        for _ in 0..p {
            n_pow.push(pw as u32);
            pw = pw * n % q;
        }
        // n^{p-1} is the inverse of n since n^p = 1
        let n_inv = n_pow[p as usize - 1] as u64;
        let mut n_inv_pow = Vec::with_capacity(p as usize);
        let mut pw = 1u64;
        for _ in 0..p {
            n_inv_pow.push(pw as u32);
            pw = pw * n_inv % q;
        }
        let elements = (0..p)
            .flat_map(|j| (0..spec.q).map(move |i| GroupElement { i, j }))
            .collect();
        Group {
            spec,
            n_pow,
            n_inv_pow,
            elements,
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// All elements, enumerated as `(j, i)` ascending.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Position of `x` in the `elements()` enumeration.
    pub fn index(&self, x: GroupElement) -> usize {
        (x.j * self.spec.q + x.i) as usize
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    /// `n^j mod q`.
    pub fn n_pow(&self, j: u32) -> u32 {
        self.n_pow[(j % self.spec.p) as usize]
    }

    /// `n^{-j} mod q`.
    pub fn n_inv_pow(&self, j: u32) -> u32 {
        self.n_inv_pow[(j % self.spec.p) as usize]
    }

    /// `(a^i b^j)(a^k b^l) = a^{i + n^j k} b^{j + l}`.
    pub fn multiply(&self, x: GroupElement, y: GroupElement) -> GroupElement {
        let q = self.spec.q as u64;
        GroupElement {
            i: ((x.i as u64 + self.n_pow[x.j as usize] as u64 * y.i as u64) % q) as u32,
            j: (x.j + y.j) % self.spec.p,
        }
    }

    /// `(a^i b^j)^{-1} = a^{-i n^{-j}} b^{-j}`.
    pub fn inverse(&self, x: GroupElement) -> GroupElement {
        let j = (self.spec.p - x.j) % self.spec.p;
        let q = self.spec.q as u64;
        let i = (q - x.i as u64) % q * self.n_pow[j as usize] as u64 % q;
        GroupElement { i: i as u32, j }
    }

    /// `x g x^{-1}`.
    pub fn conjugate(&self, x: GroupElement, g: GroupElement) -> GroupElement {
        self.multiply(self.multiply(x, g), self.inverse(x))
    }

    /// Brute-force orbit enumeration; classes ordered by their `(j, i)`-least
    /// representative, members sorted by `(j, i)`.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for &g in &self.elements {
            if seen[self.index(g)] {
                continue;
            }
            let mut members: Vec<GroupElement> =
                self.elements.iter().map(|&x| self.conjugate(x, g)).collect();
            members.sort_by_key(|e| (e.j, e.i));
            members.dedup();
            for &m in &members {
                seen[self.index(m)] = true;
            }
            classes.push(ConjugacyClass {
                representative: members[0],
                members,
            });
        }
        classes.sort_by_key(|c| (c.representative.j, c.representative.i));
        classes
    }

    /// `{ g : g x = x g }`, sorted by `(j, i)`.
    pub fn centralizer(&self, x: GroupElement) -> Vec<GroupElement> {
        self.elements
            .iter()
            .copied()
            .filter(|&g| self.multiply(g, x) == self.multiply(x, g))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u32, j: u32) -> GroupElement {
        GroupElement { i, j }
    }

    fn default_group() -> Group {
        Group::new(GroupSpec::default())
    }

    #[test]
    fn spec_validation() {
        assert!(GroupSpec::new(11, 5, 3).is_ok());
        assert!(GroupSpec::new(11, 5, 4).is_ok()); // 4 = 3^{-1} also has order 5
        assert_eq!(GroupSpec::new(12, 5, 3), Err(GroupError::BadQ(12)));
        assert_eq!(GroupSpec::new(11, 3, 3), Err(GroupError::BadP(3, 10)));
        // 10 = -1 has order 2 mod 11, not 5
        assert!(matches!(GroupSpec::new(11, 5, 10), Err(GroupError::BadN { .. })));
    }

    #[test]
    fn identity_and_defining_relation() {
        let gr = default_group();
        for &x in gr.elements() {
            assert_eq!(gr.multiply(gr.identity(), x), x);
            assert_eq!(gr.multiply(x, gr.identity()), x);
        }
        // b * a = a^3 b
        assert_eq!(gr.multiply(g(0, 1), g(1, 0)), g(3, 1));
    }

    #[test]
    fn multiplication_associative_on_all_triples() {
        let gr = default_group();
        for &x in gr.elements() {
            for &y in gr.elements() {
                for &z in gr.elements() {
                    assert_eq!(
                        gr.multiply(gr.multiply(x, y), z),
                        gr.multiply(x, gr.multiply(y, z))
                    );
                }
            }
        }
    }

    #[test]
    fn inverses() {
        let gr = default_group();
        assert_eq!(gr.inverse(g(0, 0)), g(0, 0));
        assert_eq!(gr.inverse(g(1, 0)), g(10, 0));
        assert_eq!(gr.inverse(g(0, 1)), g(0, 4));
        for &x in gr.elements() {
            assert_eq!(gr.multiply(x, gr.inverse(x)), gr.identity());
            assert_eq!(gr.multiply(gr.inverse(x), x), gr.identity());
        }
    }

    #[test]
    fn conjugacy_classes_partition() {
        let gr = default_group();
        let classes = gr.conjugacy_classes();
        assert_eq!(classes.len(), 7);
        assert_eq!(classes[0].members, vec![g(0, 0)]);
        // [b] = { a^l b : 0 <= l <= 10 }
        let b_class = classes
            .iter()
            .find(|c| c.representative == g(0, 1))
            .unwrap();
        assert_eq!(b_class.members, (0..11).map(|l| g(l, 1)).collect::<Vec<_>>());
        let total: usize = classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, 55);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 5, 5, 11, 11, 11, 11]);
    }

    #[test]
    fn centralizers_and_orbit_stabilizer() {
        let gr = default_group();
        assert_eq!(gr.centralizer(g(0, 0)).len(), 55);
        for k in 1..5 {
            let c = gr.centralizer(g(0, k));
            assert_eq!(c.len(), 5);
        }
        for l in 1..11 {
            let c = gr.centralizer(g(l, 0));
            assert_eq!(c, (0..11).map(|i| g(i, 0)).collect::<Vec<_>>());
        }
        let classes = gr.conjugacy_classes();
        for cl in &classes {
            for &x in &cl.members {
                assert_eq!(gr.centralizer(x).len() * cl.len(), 55);
            }
        }
    }
}
