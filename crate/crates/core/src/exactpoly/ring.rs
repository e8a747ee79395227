//! Ring descriptors: generators, truncations, block structure and the optional
//! projective-bundle relation of each block.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::{Error, Result};

/// Exponent vector, one entry per generator of the ambient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }
}

/// `zeta^rank = sum_{i=1}^{rank} (-1)^(i-1) c_i zeta^(rank-i)`, the relation
/// `prod_i (zeta - D_i) = 0` of a projectivised split bundle.
///
/// `chern[i-1]` holds `c_i` as terms over the block-local exponent vector;
/// those terms must not involve `zeta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleRelation {
    pub zeta: usize,
    pub rank: u32,
    pub chern: Vec<Vec<(Vec<u32>, Rational)>>,
}

/// One factor of a product ring. All generators have degree one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// `(name, truncation order)`; `h^e` survives only for `e < order`.
    /// For the relation generator the order is ignored and the bundle rank used.
    pub generators: Vec<(String, u32)>,
    pub relation: Option<BundleRelation>,
}

impl Block {
    pub fn truncated<S: AsRef<str>>(gens: &[(S, u32)]) -> Self {
        Block {
            generators: gens
                .iter()
                .map(|(n, t)| (n.as_ref().to_string(), *t))
                .collect(),
            relation: None,
        }
    }

    fn exponent_bound(&self, i: usize) -> u32 {
        match &self.relation {
            Some(rel) if rel.zeta == i => rel.rank,
            _ => self.generators[i].1,
        }
    }

    fn dim(&self) -> u32 {
        (0..self.generators.len())
            .map(|i| self.exponent_bound(i) - 1)
            .sum()
    }
}

type LocalTerms = Vec<(Vec<u32>, Rational)>;

#[derive(Debug)]
pub struct RingDescriptor {
    blocks: Vec<Block>,
    names: Vec<String>,
    offsets: Vec<usize>,
    bounds: Vec<u32>,
    block_of: Vec<usize>,
    block_dims: Vec<u32>,
    /// Per block: `zeta_powers[b][e]` is the normal form of `zeta^e`, for `e <= dim`.
    zeta_powers: Vec<Vec<LocalTerms>>,
}

impl PartialEq for RingDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

impl Eq for RingDescriptor {}

impl RingDescriptor {
    pub fn new(blocks: Vec<Block>) -> Result<Arc<Self>> {
        let multi = blocks.len() > 1;
        let mut names = Vec::new();
        let mut offsets = Vec::new();
        let mut bounds = Vec::new();
        let mut block_of = Vec::new();
        let mut block_dims = Vec::new();
        let mut zeta_powers = Vec::new();
        for (b, block) in blocks.iter().enumerate() {
            offsets.push(names.len());
            for (i, (name, t)) in block.generators.iter().enumerate() {
                if *t < 1 {
                    return Err(Error::InvalidRing(format!(
                        "generator {name} has truncation order {t}"
                    )));
                }
                names.push(if multi {
                    format!("{name}[{}]", b + 1)
                } else {
                    name.clone()
                });
                bounds.push(block.exponent_bound(i));
                block_of.push(b);
            }
            if let Some(rel) = &block.relation {
                validate_relation(block, rel)?;
            }
            block_dims.push(block.dim());
            zeta_powers.push(match &block.relation {
                Some(rel) => zeta_normal_forms(block, rel),
                None => Vec::new(),
            });
        }
        Ok(Arc::new(RingDescriptor {
            blocks,
            names,
            offsets,
            bounds,
            block_of,
            block_dims,
            zeta_powers,
        }))
    }

    /// `Q[g_1..g_n]/(g_1^{t_1}, ..., g_n^{t_n})` as a single block.
    pub fn truncated<S: AsRef<str>>(gens: &[(S, u32)]) -> Arc<Self> {
        Self::new(vec![Block::truncated(gens)]).expect("truncation orders must be positive")
    }

    /// The ring of the `l`-fold product of a single-block ring with itself.
    pub fn power(&self, l: usize) -> Result<Arc<Self>> {
        if self.blocks.len() != 1 {
            return Err(Error::InvalidRing(
                "only single-block rings can be raised to a power".into(),
            ));
        }
        if l == 0 {
            return Err(Error::InvalidRing("empty product".into()));
        }
        Self::new(vec![self.blocks[0].clone(); l])
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn nblocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, b: usize) -> &Block {
        &self.blocks[b]
    }

    pub fn block_range(&self, b: usize) -> std::ops::Range<usize> {
        self.offsets[b]..self.offsets[b] + self.blocks[b].generators.len()
    }

    pub fn block_of(&self, gen: usize) -> usize {
        self.block_of[gen]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Largest surviving exponent plus one for each generator.
    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn block_dim(&self, b: usize) -> u32 {
        self.block_dims[b]
    }

    /// Top graded degree of the ring.
    pub fn dim(&self) -> u32 {
        self.block_dims.iter().sum()
    }

    /// The unique normal-form monomial of top degree; integration reads its coefficient.
    pub fn top_monomial(&self) -> Monomial {
        Monomial(self.bounds.iter().map(|b| b - 1).collect())
    }

    pub fn blocks_identical(&self) -> bool {
        self.blocks.windows(2).all(|w| w[0] == w[1])
    }

    /// Every normal-form monomial of total degree `k`, in lexicographic order.
    pub fn monomials_of_degree(&self, k: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.ngens()];
        self.enumerate(0, k, &mut cur, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        for e in 0..self.bounds[i].min(left + 1) {
            cur[i] = e;
            self.enumerate(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }

    /// Whether the per-block degrees of `exps` fit; otherwise the monomial is zero.
    pub(crate) fn fits_degree(&self, exps: &[u32]) -> bool {
        (0..self.blocks.len()).all(|b| {
            let r = self.block_range(b);
            exps[r].iter().sum::<u32>() <= self.block_dims[b]
        })
    }

    /// Adds `coeff * exps` to `out` after rewriting to normal form.
    pub(crate) fn reduce_into(
        &self,
        exps: &mut Vec<u32>,
        coeff: Rational,
        out: &mut BTreeMap<Monomial, Rational>,
    ) {
        for (b, block) in self.blocks.iter().enumerate() {
            let Some(rel) = &block.relation else { continue };
            let off = self.offsets[b];
            let z = off + rel.zeta;
            let e = exps[z];
            if e < rel.rank {
                continue;
            }
            let powers = &self.zeta_powers[b];
            if e as usize >= powers.len() {
                return;
            }
            exps[z] = 0;
            for (local, c) in &powers[e as usize] {
                let mut next = exps.clone();
                for (i, x) in local.iter().enumerate() {
                    next[off + i] += x;
                }
                self.reduce_into(&mut next, &coeff * c, out);
            }
            return;
        }
        if exps.iter().zip(&self.bounds).any(|(e, b)| e >= b) {
            return;
        }
        let key = Monomial(exps.clone());
        match out.get_mut(&key) {
            Some(c) => *c += coeff,
            None => {
                out.insert(key, coeff);
            }
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> =
            m.0.iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| format!("{}^{}", self.names[i], e))
                .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Inverse of [`format_monomial`](Self::format_monomial); `^1` may be omitted.
    pub fn parse_monomial(&self, s: &str) -> Result<Monomial> {
        let mut exps = vec![0u32; self.ngens()];
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Monomial(exps));
        }
        for factor in s.split('*') {
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor.trim(), 1),
            };
            let i = self
                .generator_index(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            exps[i] += e;
        }
        Ok(Monomial(exps))
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .names
            .iter()
            .zip(&self.bounds)
            .map(|(n, b)| format!("{n}<{b}"))
            .collect();
        write!(f, "Q[{}]", gens.join(", "))
    }
}

fn validate_relation(block: &Block, rel: &BundleRelation) -> Result<()> {
    if rel.zeta >= block.generators.len() || rel.rank == 0 {
        return Err(Error::InvalidRing("malformed bundle relation".into()));
    }
    if rel.chern.len() != rel.rank as usize {
        return Err(Error::InvalidRing(format!(
            "bundle relation of rank {} needs {} Chern classes",
            rel.rank, rel.rank
        )));
    }
    for (i, c) in rel.chern.iter().enumerate() {
        for (exps, _) in c {
            let deg: u32 = exps.iter().sum();
            if exps.len() != block.generators.len() || exps[rel.zeta] != 0 || deg != i as u32 + 1 {
                return Err(Error::InvalidRing(format!(
                    "c_{} of the bundle relation is not a base class of degree {}",
                    i + 1,
                    i + 1
                )));
            }
        }
    }
    Ok(())
}

/// Normal forms of `zeta^0 .. zeta^dim` in block-local coordinates.
fn zeta_normal_forms(block: &Block, rel: &BundleRelation) -> Vec<LocalTerms> {
    let n = block.generators.len();
    let bound = |i: usize| block.exponent_bound(i);
    let dim = block.dim() as usize;
    let r = rel.rank;
    let mut powers: Vec<LocalTerms> = Vec::with_capacity(dim + 1);
    powers.push(vec![(vec![0u32; n], Rational::one())]);
    for _ in 0..dim {
        let prev = powers.last().unwrap();
        let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (exps, c) in prev {
            let mut e = exps.clone();
            e[rel.zeta] += 1;
            if e[rel.zeta] < r {
                *acc.entry(e).or_insert_with(Rational::zero) += c;
                continue;
            }
            for (i, ci) in rel.chern.iter().enumerate() {
                let sign = if i % 2 == 0 { c.clone() } else { -c.clone() };
                for (cm, cc) in ci {
                    let mut t = e.clone();
                    t[rel.zeta] = r - 1 - i as u32;
                    for (j, x) in cm.iter().enumerate() {
                        t[j] += x;
                    }
                    if (0..n).any(|j| t[j] >= bound(j)) {
                        continue;
                    }
                    *acc.entry(t).or_insert_with(Rational::zero) += &sign * cc;
                }
            }
        }
        powers.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
    }
    powers
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_dims() {
        let r = RingDescriptor::truncated(&[("h1", 2), ("h2", 3)]);
        assert_eq!(r.dim(), 3);
        assert_eq!(r.top_monomial(), Monomial(vec![1, 2]));
        let sq = r.power(2).unwrap();
        assert_eq!(sq.names(), &["h1[1]", "h2[1]", "h1[2]", "h2[2]"]);
        assert!(sq.blocks_identical());
        assert_eq!(sq.dim(), 6);
    }

    #[test]
    fn zero_truncation_rejected() {
        assert!(RingDescriptor::new(vec![Block::truncated(&[("h", 0)])]).is_err());
    }

    #[test]
    fn monomial_text_roundtrip() {
        let r = RingDescriptor::truncated(&[("h1", 3), ("z", 2)]);
        let m = r.parse_monomial("h1^2*z^1").unwrap();
        assert_eq!(m, Monomial(vec![2, 1]));
        assert_eq!(r.format_monomial(&m), "h1^2*z^1");
        assert_eq!(r.parse_monomial("z*h1").unwrap(), Monomial(vec![1, 1]));
        assert!(r.parse_monomial("q^2").is_err());
    }

    #[test]
    fn enumerate_graded_monomials() {
        let r = RingDescriptor::truncated(&[("a", 2), ("b", 3)]);
        let ms = r.monomials_of_degree(2);
        assert_eq!(ms, vec![Monomial(vec![0, 2]), Monomial(vec![1, 1])]);
    }
}
