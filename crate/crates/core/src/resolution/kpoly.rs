//! K-polynomials `K(x) = Σ_i (-1)^i Σ_μ γ_{i,μ} x^μ`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Resolution;
use crate::error::{Error, Result};
use crate::filtration::Guard;
use crate::monomial::{minimalize, Monomial, MonomialIdeal, VarSet};
use crate::poly::UniPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct KPolynomial {
    vars: VarSet,
    terms: BTreeMap<Monomial, BigInt>,
}

impl KPolynomial {
    pub fn zero(vars: VarSet) -> Self {
        KPolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    fn from_map(vars: VarSet, map: HashMap<Monomial, BigInt>) -> Self {
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        KPolynomial { vars, terms }
    }

    /// Collects `(-1)^i γ_{i,μ} x^μ` over all strata.
    pub fn from_resolution(res: &Resolution) -> Self {
        let mut map: HashMap<Monomial, BigInt> = HashMap::new();
        for (i, stratum) in res.strata().iter().enumerate() {
            for s in stratum {
                let c = BigInt::from(s.rank);
                let e = map.entry(s.multidegree.clone()).or_default();
                if i % 2 == 0 {
                    *e += c;
                } else {
                    *e -= c;
                }
            }
        }
        KPolynomial::from_map(res.vars().clone(), map)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluation at a 0/1 state: `x^μ ↦ 1` iff `μ ≤ α`.
    pub fn eval_state(&self, state: &[bool]) -> BigInt {
        self.terms
            .iter()
            .filter(|(m, _)| m.below_state(state))
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// Substitutes `x_j ↦ p` for every variable: `Σ c_μ p^{|μ|}`.
    pub fn to_univariate(&self) -> UniPoly {
        let mut out = UniPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(c, m.degree() as usize);
        }
        out
    }

    /// Terms ordered by degree then lex, as `x1*x2 - x1*x2*x3 + ...`.
    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if mag.is_one() {
                out.push_str(&m.display(&self.vars).to_string());
            } else if m.is_one() {
                out.push_str(&mag.to_string());
            } else {
                out.push_str(&format!("{mag}*{}", m.display(&self.vars)));
            }
        }
        out
    }
}

impl fmt::Display for KPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl fmt::Debug for KPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KPolynomial({})", self.display())
    }
}

impl Resolution {
    pub fn kpolynomial(&self) -> KPolynomial {
        KPolynomial::from_resolution(self)
    }
}

/// K-polynomial of the Taylor complex on `gens`, accumulated subset by subset
/// without materialising the resolution.
pub fn taylor_kpolynomial(vars: &VarSet, gens: &[Monomial], guard: Guard) -> Result<KPolynomial> {
    let g = gens.len();
    let total = if g >= 127 { u128::MAX } else { (1u128 << g) - 1 };
    guard.check(&format!("Taylor expansion on {g} generators"), total)?;
    if let Some(bad) = gens.iter().find(|m| m.nvars() != vars.len()) {
        return Err(Error::Dimension {
            expected: vars.len(),
            got: bad.nvars(),
        });
    }
    let mut acc: HashMap<Monomial, i64> = HashMap::new();
    let mut stack: Vec<(usize, Monomial, bool)> = Vec::new();
    for (j, m) in gens.iter().enumerate() {
        stack.push((j, m.clone(), true));
    }
    while let Some((last, lcm, positive)) = stack.pop() {
        *acc.entry(lcm.clone()).or_insert(0) += if positive { 1 } else { -1 };
        for (j, m) in gens.iter().enumerate().skip(last + 1) {
            stack.push((j, lcm.lcm_unchecked(m), !positive));
        }
    }
    let map = acc.into_iter().map(|(m, c)| (m, BigInt::from(c))).collect();
    Ok(KPolynomial::from_map(vars.clone(), map))
}

/// K-polynomial of a monomial ideal, independent of any resolution.
///
/// Pivots on a variable `x`: with `J` the generators free of `x`,
/// `K(I) = K(J) + x·(K(I:x) - K(J))`. Variable-disjoint blocks of generators
/// are combined through `1 - K(I) = Π (1 - K(I_c))`.
pub fn ideal_kpolynomial(ideal: &MonomialIdeal) -> KPolynomial {
    let mut memo = HashMap::new();
    let map = kpoly_rec(ideal.gens().to_vec(), ideal.nvars(), &mut memo);
    KPolynomial::from_map(ideal.vars().clone(), map)
}

type Poly = HashMap<Monomial, BigInt>;

fn kpoly_rec(gens: Vec<Monomial>, nvars: usize, memo: &mut HashMap<Vec<Monomial>, Poly>) -> Poly {
    if gens.is_empty() {
        return Poly::new();
    }
    if gens.iter().any(Monomial::is_one) {
        return Poly::from([(Monomial::one(nvars), BigInt::one())]);
    }
    if gens.len() == 1 {
        return Poly::from([(gens[0].clone(), BigInt::one())]);
    }
    if let Some(hit) = memo.get(&gens) {
        return hit.clone();
    }

    let blocks = components(&gens, nvars);
    let result = if blocks.len() > 1 {
        // 1 - K = Π (1 - K_c)
        let one = Monomial::one(nvars);
        let mut prod = Poly::from([(one.clone(), BigInt::one())]);
        for block in blocks {
            let mut factor = kpoly_rec(block, nvars, memo);
            for c in factor.values_mut() {
                *c = -c.clone();
            }
            *factor.entry(one.clone()).or_default() += 1;
            prod = multiply(&prod, &factor);
        }
        let mut k = Poly::new();
        for (m, c) in prod {
            *k.entry(m).or_default() -= c;
        }
        *k.entry(one).or_default() += 1;
        k.retain(|_, c| !c.is_zero());
        k
    } else {
        let x = pivot(&gens, nvars);
        let free: Vec<Monomial> = gens.iter().filter(|g| g.exponents()[x] == 0).cloned().collect();
        let xm = Monomial::from_support(nvars, [x]);
        let colon: Vec<Monomial> = gens.iter().map(|g| g.colon(&xm)).collect();
        let colon = minimal(colon);
        let k_free = kpoly_rec(free, nvars, memo);
        let k_colon = kpoly_rec(colon, nvars, memo);
        let mut out = k_free.clone();
        for (m, c) in k_colon {
            let shifted = m.mul(&xm).expect("same ring");
            *out.entry(shifted).or_default() += c;
        }
        for (m, c) in k_free {
            let shifted = m.mul(&xm).expect("same ring");
            *out.entry(shifted).or_default() -= c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    memo.insert(gens, result.clone());
    result
}

fn minimal(ms: Vec<Monomial>) -> Vec<Monomial> {
    let vars = VarSet::indexed("x", ms.first().map_or(0, Monomial::nvars));
    minimalize(&vars, ms).expect("uniform length").gens().to_vec()
}

/// Variable occurring in the most generators.
fn pivot(gens: &[Monomial], nvars: usize) -> usize {
    let mut count = vec![0usize; nvars];
    for g in gens {
        for j in g.support() {
            count[j] += 1;
        }
    }
    (0..nvars).max_by_key(|&j| (count[j], std::cmp::Reverse(j))).expect("nvars > 0")
}

/// Groups generators into classes connected through shared variables.
fn components(gens: &[Monomial], nvars: usize) -> Vec<Vec<Monomial>> {
    let mut parent: Vec<usize> = (0..gens.len()).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    let mut owner = vec![usize::MAX; nvars];
    for (n, g) in gens.iter().enumerate() {
        for j in g.support() {
            if owner[j] == usize::MAX {
                owner[j] = n;
            } else {
                let (a, b) = (find(&mut parent, owner[j]), find(&mut parent, n));
                parent[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Monomial>> = BTreeMap::new();
    for (n, g) in gens.iter().enumerate() {
        let root = find(&mut parent, n);
        groups.entry(root).or_default().push(g.clone());
    }
    groups.into_values().collect()
}

fn multiply(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            *out.entry(ma.mul(mb).expect("same ring")).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}
