//! Group representations of planar vortexes and finite group tables.
//!
//! A generator is a vertex with a home cycle. Each generator moves a token on
//! its home cycle one edge forward along the cycle's counterclockwise
//! orientation. Tokens start at the first generator homed on each cycle. Two
//! words are identified iff they leave every token in the same place, so the
//! group is a product of cyclic groups, one per home cycle.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::complex::{PlanarVortex, VertexId};
use crate::error::{Error, Result};

/// Integer coefficients `Σ kⱼ gⱼ` over an ordered generator basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GroupWord {
    coeffs: Vec<i64>,
}

impl GroupWord {
    pub fn new(coeffs: Vec<i64>) -> Self {
        GroupWord { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        GroupWord { coeffs: vec![0; n] }
    }

    /// The word `1·gⱼ`.
    pub fn generator(n: usize, j: usize) -> Self {
        let mut w = Self::zero(n);
        w.coeffs[j] = 1;
        w
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&k| k == 0)
    }

    pub fn add(&self, other: &GroupWord) -> Result<GroupWord> {
        if self.len() != other.len() {
            return Err(Error::WordLengthMismatch(self.len(), other.len()));
        }
        Ok(GroupWord::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn neg(&self) -> GroupWord {
        GroupWord::new(self.coeffs.iter().map(|k| -k).collect())
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(j, k)| format!("{k}g{}", j + 1))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

pub fn word_add(a: &GroupWord, b: &GroupWord) -> Result<GroupWord> {
    a.add(b)
}

pub fn word_neg(a: &GroupWord) -> GroupWord {
    a.neg()
}

pub fn word_zero(n: usize) -> GroupWord {
    GroupWord::zero(n)
}

/// Ordered generators `g₁..g_k`, each a vertex with an optional home cycle.
///
/// Without an explicit home a generator lives on the outermost cycle that
/// contains its vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorBasis {
    generators: Vec<VertexId>,
    homes: Vec<Option<usize>>,
}

impl GeneratorBasis {
    pub fn new(generators: Vec<VertexId>) -> Result<Self> {
        let homes = vec![None; generators.len()];
        Self::with_homes(generators, homes)
    }

    pub fn with_homes(generators: Vec<VertexId>, homes: Vec<Option<usize>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidBasis("basis is empty".into()));
        }
        if homes.len() != generators.len() {
            return Err(Error::InvalidBasis(format!(
                "{} homes for {} generators",
                homes.len(),
                generators.len()
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::InvalidBasis(format!("vertex {g} appears twice")));
            }
        }
        Ok(GeneratorBasis { generators, homes })
    }

    pub fn generators(&self) -> &[VertexId] {
        &self.generators
    }

    pub fn homes(&self) -> &[Option<usize>] {
        &self.homes
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Home cycle index of every generator on `v`.
    pub fn resolve_homes(&self, v: &PlanarVortex) -> Result<Vec<usize>> {
        self.generators
            .iter()
            .zip(&self.homes)
            .map(|(&g, home)| {
                if v.point_of(g).is_none() {
                    return Err(Error::InvalidBasis(format!(
                        "vertex {g} is not in the vortex"
                    )));
                }
                match *home {
                    Some(c) => {
                        let cycle = v.cycles().get(c).ok_or_else(|| {
                            Error::InvalidBasis(format!("cycle {c} does not exist"))
                        })?;
                        if cycle.contains(g) {
                            Ok(c)
                        } else {
                            Err(Error::InvalidBasis(format!(
                                "vertex {g} is not on cycle {c}"
                            )))
                        }
                    }
                    None => v
                        .cycles()
                        .iter()
                        .position(|c| c.contains(g))
                        .ok_or_else(|| {
                            Error::InvalidBasis(format!("vertex {g} is not on any cycle"))
                        }),
                }
            })
            .collect()
    }
}

/// A validated finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    op: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroupTable {
    /// Validates closure, identity, inverses and associativity.
    ///
    /// Associativity is checked with Light's test over a generating set.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let m = rows.len();
        let bad = |msg: String| Err(Error::InvalidGroupTable(msg));
        if m == 0 {
            return bad("empty table".into());
        }
        let mut op = Vec::with_capacity(m * m);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != m {
                return bad(format!("row {a} has {} entries, expected {m}", row.len()));
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= m {
                    return bad(format!("{a}·{b} = {c} is outside the group"));
                }
                op.push(c as u32);
            }
        }
        let mul = |a: usize, b: usize| op[a * m + b] as usize;
        let Some(identity) = (0..m).find(|&e| (0..m).all(|x| mul(e, x) == x && mul(x, e) == x))
        else {
            return bad("no identity element".into());
        };
        let mut inverse = Vec::with_capacity(m);
        for x in 0..m {
            match (0..m).find(|&y| mul(x, y) == identity && mul(y, x) == identity) {
                Some(y) => inverse.push(y),
                None => return bad(format!("element {x} has no inverse")),
            }
        }
        let table = FiniteGroupTable {
            order: m,
            op,
            identity,
            inverse,
        };
        for s in table.generating_set() {
            for x in 0..m {
                let xs = table.mul(x, s);
                for y in 0..m {
                    if table.mul(xs, y) != table.mul(x, table.mul(s, y)) {
                        return bad(format!("({x}·{s})·{y} ≠ {x}·({s}·{y})"));
                    }
                }
            }
        }
        Ok(table)
    }

    /// `Z/m` with `a·b = a + b mod m`.
    pub fn cyclic(m: usize) -> Result<Self> {
        Self::new(
            (0..m)
                .map(|a| (0..m).map(|b| (a + b) % m).collect())
                .collect(),
        )
    }

    /// Direct product; `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroupTable) -> Result<Self> {
        let (m1, m2) = (self.order, other.order);
        let rows = (0..m1 * m2)
            .map(|x| {
                (0..m1 * m2)
                    .map(|y| self.mul(x / m2, y / m2) * m2 + other.mul(x % m2, y % m2))
                    .collect()
            })
            .collect();
        Self::new(rows)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.op[a * self.order + b] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Greedy generating set: each pick is the least element outside the
    /// subgroup generated so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let m = self.order;
        let mut inside = vec![false; m];
        inside[self.identity] = true;
        let mut gens = Vec::new();
        while let Some(x) = inside.iter().position(|&b| !b) {
            gens.push(x);
            let mut queue: VecDeque<usize> = (0..m).filter(|&y| inside[y]).collect();
            while let Some(y) = queue.pop_front() {
                for &g in &gens {
                    let z = self.mul(y, g);
                    if !inside[z] {
                        inside[z] = true;
                        queue.push_back(z);
                    }
                }
            }
        }
        gens
    }

    /// Plain-text Cayley table: `m` lines of `m` space-separated indices.
    pub fn to_cayley_text(&self) -> String {
        let mut out = String::new();
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|b| self.mul(a, b).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_cayley_text(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .enumerate()
            .map(|(i, line)| {
                line.split_whitespace()
                    .map(|t| {
                        t.parse::<usize>().map_err(|_| {
                            Error::InvalidGroupTable(format!("line {}: bad entry {t:?}", i + 1))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }
}

/// Groups larger than this are refused by [`vortex_group`].
pub const MAX_GROUP_ORDER: usize = 4096;

/// The group of a vortex under a generator basis, with the data needed to
/// evaluate words.
#[derive(Debug, Clone)]
pub struct VortexGroup {
    table: FiniteGroupTable,
    basis: GeneratorBasis,
    /// Home cycle of each generator.
    homes: Vec<usize>,
    /// Cycles carrying a token, ascending.
    cycles: Vec<usize>,
    /// Ring of each token cycle and the token's starting index on it.
    rings: Vec<Vec<VertexId>>,
    starts: Vec<usize>,
    /// Token offsets of each element; element 0 is the identity.
    states: Vec<Vec<usize>>,
    words: Vec<GroupWord>,
}

impl VortexGroup {
    pub fn table(&self) -> &FiniteGroupTable {
        &self.table
    }

    pub fn basis(&self) -> &GeneratorBasis {
        &self.basis
    }

    pub fn homes(&self) -> &[usize] {
        &self.homes
    }

    /// Cycles that carry a token, in ascending order.
    pub fn token_cycles(&self) -> &[usize] {
        &self.cycles
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    /// A shortest word (breadth-first, generators in basis order) for each element.
    pub fn word_of(&self, element: usize) -> &GroupWord {
        &self.words[element]
    }

    fn offsets(&self, word: &GroupWord) -> Result<Vec<usize>> {
        if word.len() != self.basis.len() {
            return Err(Error::WordLengthMismatch(word.len(), self.basis.len()));
        }
        let mut offsets = vec![0i64; self.cycles.len()];
        for (j, &k) in word.coeffs().iter().enumerate() {
            let t = self.token_of(self.homes[j]);
            offsets[t] += k;
        }
        Ok(offsets
            .iter()
            .zip(&self.rings)
            .map(|(&o, ring)| o.rem_euclid(ring.len() as i64) as usize)
            .collect())
    }

    fn token_of(&self, cycle: usize) -> usize {
        self.cycles
            .binary_search(&cycle)
            .expect("home cycle carries a token")
    }

    /// Vertex under each token after applying `word` from the base position.
    pub fn evaluate(&self, word: &GroupWord) -> Result<Vec<VertexId>> {
        Ok(self.positions(&self.offsets(word)?))
    }

    /// Vertex under each token for the element `element`.
    pub fn element_positions(&self, element: usize) -> Vec<VertexId> {
        self.positions(&self.states[element])
    }

    fn positions(&self, offsets: &[usize]) -> Vec<VertexId> {
        offsets
            .iter()
            .zip(&self.rings)
            .zip(&self.starts)
            .map(|((&o, ring), &s)| ring[(s + o) % ring.len()])
            .collect()
    }

    /// Group element represented by `word`.
    pub fn element_of(&self, word: &GroupWord) -> Result<usize> {
        let offsets = self.offsets(word)?;
        Ok(self
            .states
            .iter()
            .position(|s| *s == offsets)
            .expect("orbit closure contains every reachable state"))
    }
}

/// Builds the finite group generated by `basis` on `v` by orbit closure.
pub fn vortex_group(v: &PlanarVortex, basis: &GeneratorBasis) -> Result<VortexGroup> {
    let homes = basis.resolve_homes(v)?;
    let mut cycles = homes.clone();
    cycles.sort_unstable();
    cycles.dedup();
    let rings: Vec<Vec<VertexId>> = cycles
        .iter()
        .map(|&c| v.cycles()[c].ring().to_vec())
        .collect();
    let starts: Vec<usize> = cycles
        .iter()
        .zip(&rings)
        .map(|(&c, ring)| {
            let first = homes
                .iter()
                .position(|&h| h == c)
                .expect("cycle has a generator");
            let g = basis.generators()[first];
            ring.iter()
                .position(|&x| x == g)
                .expect("generator lies on its home")
        })
        .collect();
    let expected: usize = rings.iter().map(Vec::len).product();
    if expected > MAX_GROUP_ORDER {
        return Err(Error::InvalidBasis(format!(
            "group order {expected} exceeds the limit of {MAX_GROUP_ORDER}"
        )));
    }
    let token = |cycle: usize| cycles.binary_search(&cycle).expect("home listed");
    let step = |state: &[usize], j: usize| -> Vec<usize> {
        let mut next = state.to_vec();
        let t = token(homes[j]);
        next[t] = (next[t] + 1) % rings[t].len();
        next
    };

    let k = basis.len();
    let zero = vec![0usize; cycles.len()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(zero.clone(), 0)]);
    let mut states = vec![zero];
    let mut words = vec![GroupWord::zero(k)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        for j in 0..k {
            let next = step(&states[e], j);
            if !index.contains_key(&next) {
                index.insert(next.clone(), states.len());
                let w = words[e]
                    .add(&GroupWord::generator(k, j))
                    .expect("same basis length");
                queue.push_back(states.len());
                states.push(next);
                words.push(w);
            }
        }
    }

    // a·b: apply b's word starting from a's state
    let m = states.len();
    let rows = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    let mut s = states[a].clone();
                    for (j, &c) in words[b].coeffs().iter().enumerate() {
                        for _ in 0..c {
                            s = step(&s, j);
                        }
                    }
                    index[&s]
                })
                .collect()
        })
        .collect();
    let table = FiniteGroupTable::new(rows)?;
    Ok(VortexGroup {
        table,
        basis: basis.clone(),
        homes,
        cycles,
        rings,
        starts,
        states,
        words,
    })
}
