//! Quivers and monomials (paths in the free category on a quiver).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Gen = u32;
pub type Obj = u32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
    pub degree: u32,
}

/// Objects and generating arrows. A one-object quiver presents an ordinary algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub objects: Vec<String>,
    pub generators: Vec<Generator>,
}

impl Quiver {
    /// One object, degree-1 loops with the given names.
    pub fn single(names: &[&str]) -> Quiver {
        Quiver {
            objects: vec!["*".into()],
            generators: names
                .iter()
                .map(|n| Generator { name: n.to_string(), src: 0, tgt: 0, degree: 1 })
                .collect(),
        }
    }

    pub fn new(objects: Vec<String>, generators: Vec<Generator>) -> Result<Quiver> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Invalid(format!("duplicate generator {}", g.name)));
            }
            if g.src as usize >= objects.len() || g.tgt as usize >= objects.len() {
                return Err(Error::Invalid(format!("generator {} has an unknown endpoint", g.name)));
            }
            if g.degree == 0 {
                return Err(Error::Invalid(format!("generator {} must have positive degree", g.name)));
            }
        }
        Ok(Quiver { objects, generators })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn gen_by_name(&self, name: &str) -> Option<Gen> {
        self.generators.iter().position(|g| g.name == name).map(|i| i as Gen)
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.generators[g as usize].name
    }

    pub fn degree_of(&self, g: Gen) -> u32 {
        self.generators[g as usize].degree
    }

    pub fn one_object(&self) -> bool {
        self.objects.len() == 1
    }

    /// Build a monomial from a word, checking composability.
    pub fn monomial(&self, word: &[Gen]) -> Result<Monomial> {
        match word.first() {
            None => Ok(Monomial::identity(0)),
            Some(&g0) => {
                if let Some(&g) = word.iter().find(|&&g| g as usize >= self.generators.len()) {
                    return Err(Error::Invalid(format!("generator index {g} out of range")));
                }
                for w in word.windows(2) {
                    let (a, b) = (&self.generators[w[0] as usize], &self.generators[w[1] as usize]);
                    if a.tgt != b.src {
                        return Err(Error::Composition(a.name.clone(), b.name.clone()));
                    }
                }
                let src = self.generators[g0 as usize].src;
                let tgt = self.generators[*word.last().unwrap() as usize].tgt;
                Ok(Monomial { word: word.to_vec(), src, tgt })
            }
        }
    }

    /// The object reached after reading `i` letters of `m`.
    pub fn object_at(&self, m: &Monomial, i: usize) -> Obj {
        if i == 0 {
            m.src
        } else {
            self.generators[m.word[i - 1] as usize].tgt
        }
    }

    /// Degree of a monomial (sum of generator degrees).
    pub fn degree(&self, m: &Monomial) -> u32 {
        m.word.iter().map(|&g| self.degree_of(g)).sum()
    }

    /// Subword `[i, j)` with its boundary.
    pub fn slice(&self, m: &Monomial, i: usize, j: usize) -> Monomial {
        let src = self.object_at(m, i);
        let tgt = if i == j { src } else { self.generators[m.word[j - 1] as usize].tgt };
        Monomial { word: m.word[i..j].to_vec(), src, tgt }
    }

    /// All monomials of exact degree `d` starting at any object, in canonical order.
    pub fn words_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d == 0 {
            return (0..self.objects.len() as Obj).map(Monomial::identity).collect();
        }
        let mut stack: Vec<(Vec<Gen>, u32)> = vec![(Vec::new(), 0)];
        while let Some((w, deg)) = stack.pop() {
            if deg == d {
                out.push(self.monomial(&w).expect("composable by construction"));
                continue;
            }
            for g in (0..self.len() as Gen).rev() {
                let gd = self.degree_of(g);
                if deg + gd > d {
                    continue;
                }
                if let Some(&last) = w.last() {
                    if self.generators[last as usize].tgt != self.generators[g as usize].src {
                        continue;
                    }
                }
                let mut w2 = w.clone();
                w2.push(g);
                stack.push((w2, deg + gd));
            }
        }
        out.sort();
        out
    }

    pub fn show(&self, m: &Monomial) -> String {
        MonoDisplay { q: self, m }.to_string()
    }
}

/// A path in the free category: a word of composable generators.
/// The empty word at object p is the identity 1_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub word: Vec<Gen>,
    pub src: Obj,
    pub tgt: Obj,
}

impl Monomial {
    pub fn identity(p: Obj) -> Monomial {
        Monomial { word: Vec::new(), src: p, tgt: p }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Weight = word length.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn boundary(&self) -> (Obj, Obj) {
        (self.src, self.tgt)
    }

    pub fn compose(&self, o: &Monomial) -> Result<Monomial> {
        if self.tgt != o.src {
            return Err(Error::Composition(format!("{:?}", self.word), format!("{:?}", o.word)));
        }
        Ok(self.mul(o))
    }

    /// Composition without the boundary check, for internal callers that
    /// already know the factors are composable.
    pub fn mul(&self, o: &Monomial) -> Monomial {
        debug_assert_eq!(self.tgt, o.src, "non-composable monomials");
        let mut word = Vec::with_capacity(self.word.len() + o.word.len());
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&o.word);
        Monomial { word, src: self.src, tgt: o.tgt }
    }

    /// `l · self · r`.
    pub fn whisker(&self, l: &Monomial, r: &Monomial) -> Monomial {
        l.mul(self).mul(r)
    }

    /// Positions where `pat` occurs as a factor.
    pub fn occurrences(&self, pat: &[Gen]) -> Vec<usize> {
        if pat.is_empty() || pat.len() > self.word.len() {
            return Vec::new();
        }
        (0..=self.word.len() - pat.len()).filter(|&i| &self.word[i..i + pat.len()] == pat).collect()
    }

    pub fn contains_factor(&self, pat: &[Gen]) -> bool {
        !self.occurrences(pat).is_empty()
    }
}

impl Ord for Monomial {
    /// Canonical order: length, then generator indices, then boundary.
    fn cmp(&self, o: &Monomial) -> Ordering {
        self.word
            .len()
            .cmp(&o.word.len())
            .then_with(|| self.word.cmp(&o.word))
            .then_with(|| (self.src, self.tgt).cmp(&(o.src, o.tgt)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Monomial) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

struct MonoDisplay<'a> {
    q: &'a Quiver,
    m: &'a Monomial,
}

impl fmt::Display for MonoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.word.is_empty() {
            return if self.q.one_object() {
                write!(f, "1")
            } else {
                write!(f, "1_{}", self.q.objects[self.m.src as usize])
            };
        }
        let mut first = true;
        let w = &self.m.word;
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = self.q.name(w[i]);
            if j - i > 1 {
                write!(f, "{name}^{}", j - i)?;
            } else {
                write!(f, "{name}")?;
            }
            i = j;
        }
        Ok(())
    }
}
