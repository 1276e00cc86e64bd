use alloc::vec::Vec;
use core::fmt;

/// An exponent vector `α ∈ N^k`.
///
/// The derived `Ord` is plain lexicographic and only serves as a map key;
/// the graded order used by Gröbner bases lives in `hilbert::compare_order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(alloc::vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = alloc::vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All exponent vectors in `k` variables of total degree exactly `s`,
    /// in lexicographically decreasing order of the exponent list.
    pub fn all_of_degree(k: usize, s: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = alloc::vec![0u32; k];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if k == 0 {
            if s == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, s, &mut cur, &mut out);
        out
    }

    /// All exponent vectors of total degree at most `d`.
    pub fn all_up_to_degree(k: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|s| Monomial::all_of_degree(k, s)).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, e) in self.0.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_slices_have_binomial_size() {
        assert_eq!(Monomial::all_of_degree(3, 3).len(), 10);
        assert_eq!(Monomial::all_up_to_degree(2, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(1, 4), alloc::vec![Monomial(alloc::vec![4])]);
    }

    #[test]
    fn divisibility() {
        let a = Monomial(alloc::vec![1, 0, 2]);
        let b = Monomial(alloc::vec![2, 1, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Monomial(alloc::vec![1, 1, 0]));
        assert_eq!(a.lcm(&Monomial(alloc::vec![0, 3, 1])), Monomial(alloc::vec![1, 3, 2]));
    }
}
