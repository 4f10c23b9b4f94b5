//! Monomials over an ordered variable set and monomial ideals given by their
//! minimal generators.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered, named variables of a polynomial ring.
#[derive(Clone)]
pub struct VarSet {
    inner: Arc<VarSetInner>,
}

struct VarSetInner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || !is_identifier(name) {
                return Err(Error::Parse {
                    text: name.clone(),
                    reason: "variable names must be alphanumeric identifiers".into(),
                });
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(VarSet {
            inner: Arc::new(VarSetInner { names, index }),
        })
    }

    /// `x1, ..., xn`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        VarSet::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("generated names are distinct")
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.inner.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.inner.names[i]
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.names == other.inner.names
    }
}

impl Eq for VarSet {}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A monomial `x^a`, stored as its exponent vector.
///
/// Ordered by total degree first, then lexicographically with `x1 > x2 > ...`,
/// so `x1*x2` sorts before `x2*x3`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    /// Squarefree monomial with the given support (0-based positions).
    pub fn from_support(nvars: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut exps = vec![0; nvars];
        for j in support {
            exps[j] = 1;
        }
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    fn check(&self, other: &Monomial) -> Result<()> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::Dimension {
                expected: self.exps.len(),
                got: other.exps.len(),
            });
        }
        Ok(())
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        Ok(self.lcm_unchecked(other))
    }

    /// Divisibility `self | other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub(crate) fn lcm_assign(&mut self, other: &Monomial) {
        for (a, &b) in self.exps.iter_mut().zip(&other.exps) {
            *a = (*a).max(b);
        }
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        Ok(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        })
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if self.exps.len() != other.exps.len() || !other.divides_unchecked(self) {
            return None;
        }
        Some(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    /// `self / gcd(self, other)`: the generator of `<self> : other`.
    pub(crate) fn colon(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        Ok(Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    /// True when every exponent of `self` is at most the 0/1 state entry.
    pub fn below_state(&self, state: &[bool]) -> bool {
        self.exps
            .iter()
            .zip(state)
            .all(|(&e, &s)| e == 0 || (s && e <= 1))
    }

    pub fn parse(text: &str, vars: &VarSet) -> Result<Monomial> {
        let err = |reason: &str| Error::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = text.trim();
        let mut exps = vec![0u32; vars.len()];
        if trimmed == "1" {
            return Ok(Monomial { exps });
        }
        if trimmed.is_empty() {
            return Err(err("empty monomial"));
        }
        for factor in trimmed.split('*') {
            let factor = factor.trim();
            let (name, power) = match factor.split_once('^') {
                Some((n, k)) => {
                    let k: u32 = k
                        .trim()
                        .parse()
                        .map_err(|_| err("exponent must be a non-negative integer"))?;
                    (n.trim(), k)
                }
                None => (factor, 1),
            };
            if name.is_empty() {
                return Err(err("empty factor"));
            }
            let pos = vars
                .position(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            exps[pos] += power;
        }
        Ok(Monomial { exps })
    }

    pub fn display<'a>(&'a self, vars: &'a VarSet) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, vars }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.exps)
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    vars: &'a VarSet,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.mono.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.vars.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A monomial ideal, kept as its canonically sorted minimal generators.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: VarSet,
    gens: Vec<Monomial>,
}

/// Minimal generators of the ideal generated by `ms`, deduplicated and sorted.
pub fn minimalize(vars: &VarSet, ms: impl IntoIterator<Item = Monomial>) -> Result<MonomialIdeal> {
    let mut ms: Vec<Monomial> = ms.into_iter().collect();
    for m in &ms {
        if m.nvars() != vars.len() {
            return Err(Error::Dimension {
                expected: vars.len(),
                got: m.nvars(),
            });
        }
    }
    ms.sort();
    ms.dedup();
    // Sorted by degree, so a divisor of `m` is always examined before `m`.
    let mut gens: Vec<Monomial> = Vec::new();
    for m in ms {
        if !gens.iter().any(|g| g.divides_unchecked(&m)) {
            gens.push(m);
        }
    }
    Ok(MonomialIdeal {
        vars: vars.clone(),
        gens,
    })
}

impl MonomialIdeal {
    pub fn zero(vars: VarSet) -> Self {
        MonomialIdeal {
            vars,
            gens: Vec::new(),
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.nvars() == self.nvars() && self.gens.iter().any(|g| g.divides_unchecked(m))
    }

    pub fn contains_state(&self, state: &[bool]) -> bool {
        self.gens.iter().any(|g| g.below_state(state))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Errors with the first non-squarefree generator.
    pub fn require_squarefree(&self) -> Result<()> {
        match self.gens.iter().find(|g| !g.is_squarefree()) {
            Some(g) => Err(Error::NotSquarefree(g.display(&self.vars).to_string())),
            None => Ok(()),
        }
    }

    /// lcm of all generators; `None` for the zero ideal.
    pub fn lcm_all(&self) -> Option<Monomial> {
        let mut it = self.gens.iter();
        let mut acc = it.next()?.clone();
        for g in it {
            acc.lcm_assign(g);
        }
        Some(acc)
    }

    pub fn parse_generators<S: AsRef<str>>(vars: &VarSet, gens: &[S]) -> Result<MonomialIdeal> {
        let ms = gens
            .iter()
            .map(|s| Monomial::parse(s.as_ref(), vars))
            .collect::<Result<Vec<_>>>()?;
        minimalize(vars, ms)
    }

    pub fn format_generators(&self) -> Vec<String> {
        self.gens
            .iter()
            .map(|g| g.display(&self.vars).to_string())
            .collect()
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.format_generators().join(", "))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
