use std::cmp::Ordering;

/// Exponent vector, ordered graded-lexicographically: total degree first,
/// then lexicographic with the first variable largest.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect()))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub(crate) fn exps_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x2 = Monomial::from_exponents(vec![2, 0]);
        let xy = Monomial::from_exponents(vec![1, 1]);
        let y2 = Monomial::from_exponents(vec![0, 2]);
        let x = Monomial::from_exponents(vec![1, 0]);
        assert!(x2 > xy && xy > y2 && y2 > x);
        let xy2 = Monomial::from_exponents(vec![1, 2]);
        let x2y = Monomial::from_exponents(vec![2, 1]);
        assert!(x2y > xy2);
    }

    #[test]
    fn division() {
        let a = Monomial::from_exponents(vec![2, 1]);
        let b = Monomial::from_exponents(vec![1, 1]);
        assert_eq!(a.div(&b), Some(Monomial::from_exponents(vec![1, 0])));
        assert_eq!(b.div(&a), None);
    }
}
