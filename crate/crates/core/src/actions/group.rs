use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default bound on the number of enumerated group elements (|S_8| / 4).
pub const DEFAULT_GROUP_CAP: usize = 10080;

/// Permutation of variable indices; `images[i]` is where variable `i` goes.
/// Acting on functions, `σ(x_i) = x_{σ(i)}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Parameter(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// One-line notation with 1-based images, e.g. `[2, 1, 3]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Parameter("one-line notation is 1-based".into()));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        Permutation(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// +1 or −1.
    pub fn sign(&self) -> i32 {
        let mut seen = vec![false; self.0.len()];
        let mut sign = 1;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "]")
    }
}

/// Index of an element in a [`Group`]'s enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupElement(pub usize);

/// Finite permutation group, enumerated eagerly. Element 0 is the identity;
/// the rest follow breadth-first order from the generators.
#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for Group {}

impl Group {
    pub fn trivial(degree: usize) -> Self {
        Self::from_elements(degree, vec![Permutation::identity(degree)])
    }

    fn from_elements(degree: usize, elements: Vec<Permutation>) -> Self {
        let index = elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Group { degree, elements, index }
    }

    /// Closure of `generators` under composition, capped at `cap` elements.
    pub fn generate(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        for g in generators {
            if g.len() != degree {
                return Err(Error::Parameter(format!(
                    "generator {g} has degree {} but the group acts on {degree} points",
                    g.len()
                )));
            }
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next = g.compose(&elements[i]);
                if index.contains_key(&next) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::Resource(format!("group closure exceeds {cap} elements")));
                }
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
        Ok(Group { degree, elements, index })
    }

    /// Symmetric group on the points `block`, fixing all others.
    pub fn symmetric_on(degree: usize, block: &[usize], cap: usize) -> Result<Self> {
        let gens: Vec<Permutation> = block
            .windows(2)
            .map(|w| Permutation::transposition(degree, w[0], w[1]))
            .collect();
        Self::generate(degree, &gens, cap)
    }

    /// Subgroup made of the listed elements of `self` (assumed closed).
    pub(crate) fn subgroup(&self, members: &[GroupElement]) -> Group {
        Group::from_elements(self.degree, members.iter().map(|g| self.elements[g.0].clone()).collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(0)
    }

    pub fn element(&self, g: GroupElement) -> &Permutation {
        &self.elements[g.0]
    }

    pub fn elements(&self) -> impl Iterator<Item = (GroupElement, &Permutation)> {
        self.elements.iter().enumerate().map(|(i, p)| (GroupElement(i), p))
    }

    pub fn lookup(&self, p: &Permutation) -> Option<GroupElement> {
        self.index.get(p).copied().map(GroupElement)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn compose(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let p = self.elements[a.0].compose(&self.elements[b.0]);
        self.lookup(&p).expect("group is closed")
    }

    pub fn inverse(&self, a: GroupElement) -> GroupElement {
        self.lookup(&self.elements[a.0].inverse()).expect("group is closed")
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_orders() {
        for (n, order) in [(1, 1), (2, 2), (3, 6), (4, 24), (5, 120)] {
            let g = Group::symmetric_on(n, &(0..n).collect::<Vec<_>>(), DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(g.order(), order);
        }
    }

    #[test]
    fn cap_is_an_error() {
        let r = Group::symmetric_on(6, &(0..6).collect::<Vec<_>>(), 100);
        assert!(matches!(r, Err(Error::Resource(_))));
    }

    #[test]
    fn composition_and_sign() {
        let s1 = Permutation::transposition(3, 0, 1);
        let s2 = Permutation::transposition(3, 1, 2);
        let c = s1.compose(&s2);
        assert_eq!(c.images(), &[1, 2, 0]);
        assert_eq!(c.sign(), 1);
        assert_eq!(s1.sign(), -1);
        assert!(c.compose(&c.inverse()).is_identity());
        assert_eq!(Permutation::from_one_line(&[2, 3, 1]).unwrap(), c);
    }
}
