//! Formal-character engine: exact weight multiplicities (Freudenthal),
//! highest-weight peeling, tensor and exterior powers, and restriction by
//! weights along the torus embeddings of the three families.
//!
//! Everything here is brute force on weight multisets; it serves as the
//! independent oracle for the closed-form branching laws.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::family::GroupFamily;
use crate::vchar::VirtualChar;
use crate::weight::{is_nonincreasing, is_zpp, KMLabel, KWeight};

/// One factor of a reductive shape. Labels live in `Z^rank` slices of the
/// concatenated weight vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    /// Torus of the given rank: every label is its own single weight.
    Torus { rank: usize },
    /// Unitary-group style type-A factor with labels in `Z^rank`,
    /// nonincreasing, central character tracked.
    TypeA { rank: usize },
    /// `SU(2)` with nonnegative integer labels (dimension minus one).
    TypeA1,
    /// `SO(2 rank)` with labels in `Z^rank_{++}`; `rank = 1` is abelian.
    TypeD { rank: usize },
}

impl Factor {
    pub fn rank(&self) -> usize {
        match *self {
            Factor::Torus { rank } => rank,
            Factor::TypeA { rank } => rank,
            Factor::TypeA1 => 1,
            Factor::TypeD { rank } => rank,
        }
    }

    fn is_dominant(&self, v: &[i64]) -> bool {
        match *self {
            Factor::Torus { .. } => true,
            Factor::TypeA { .. } => is_nonincreasing(v),
            Factor::TypeA1 => v[0] >= 0,
            Factor::TypeD { rank } => rank == 1 || is_zpp(v),
        }
    }

    fn dim(&self, v: &[i64]) -> u128 {
        match *self {
            Factor::Torus { .. } => 1,
            Factor::TypeA1 => (v[0] + 1) as u128,
            Factor::TypeA { rank } => {
                if rank <= 1 {
                    return 1;
                }
                let rho: Vec<i64> = (0..rank).map(|i| (rank - 1 - i) as i64).collect();
                let l: Vec<i64> = v.iter().zip(&rho).map(|(a, b)| a + b).collect();
                let mut num: i128 = 1;
                let mut den: i128 = 1;
                for i in 0..rank {
                    for j in i + 1..rank {
                        num *= (l[i] - l[j]) as i128;
                        den *= (rho[i] - rho[j]) as i128;
                    }
                }
                (num / den) as u128
            }
            Factor::TypeD { rank } => {
                if rank <= 1 {
                    return 1;
                }
                let rho: Vec<i64> = (0..rank).map(|i| (rank - 1 - i) as i64).collect();
                let l: Vec<i64> = v.iter().zip(&rho).map(|(a, b)| a + b).collect();
                let mut num: i128 = 1;
                let mut den: i128 = 1;
                for i in 0..rank {
                    for j in i + 1..rank {
                        num *= ((l[i] - l[j]) * (l[i] + l[j])) as i128;
                        den *= ((rho[i] - rho[j]) * (rho[i] + rho[j])) as i128;
                    }
                }
                (num / den) as u128
            }
        }
    }
}

/// Ordered list of factors; the weight lattice is the concatenation of the
/// factor lattices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    pub factors: Vec<Factor>,
}

impl Shape {
    pub fn new(factors: Vec<Factor>) -> Shape {
        Shape { factors }
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank()).sum()
    }

    fn slices<'a>(&self, v: &'a [i64]) -> Vec<&'a [i64]> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut at = 0;
        for f in &self.factors {
            out.push(&v[at..at + f.rank()]);
            at += f.rank();
        }
        out
    }

    pub fn is_dominant(&self, v: &[i64]) -> bool {
        v.len() == self.rank()
            && self
                .factors
                .iter()
                .zip(self.slices(v))
                .all(|(f, s)| f.is_dominant(s))
    }

    pub fn check_dominant(&self, v: &[i64]) -> Result<()> {
        if self.is_dominant(v) {
            Ok(())
        } else {
            Err(Error::Validation(format!(
                "weight {v:?} is not dominant for shape {:?}",
                self.factors
            )))
        }
    }

    pub fn dim(&self, hw: &[i64]) -> u128 {
        self.factors
            .iter()
            .zip(self.slices(hw))
            .map(|(f, s)| f.dim(s))
            .product()
    }
}

type DomMap = BTreeMap<Vec<i64>, i64>;
type WeightList = Vec<(Vec<i64>, i64)>;
type FactorCache<V> = Mutex<HashMap<(Factor, Vec<i64>), Arc<V>>>;

fn dom_cache() -> &'static FactorCache<DomMap> {
    static CACHE: OnceLock<FactorCache<DomMap>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn full_cache() -> &'static FactorCache<WeightList> {
    static CACHE: OnceLock<FactorCache<WeightList>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Positive roots of a factor, as coordinate vectors.
fn positive_roots(f: &Factor) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    match *f {
        Factor::Torus { .. } | Factor::TypeA1 => {}
        Factor::TypeA { rank } => {
            for i in 0..rank {
                for j in i + 1..rank {
                    let mut r = vec![0; rank];
                    r[i] = 1;
                    r[j] = -1;
                    out.push(r);
                }
            }
        }
        Factor::TypeD { rank } => {
            for i in 0..rank {
                for j in i + 1..rank {
                    let mut r = vec![0; rank];
                    r[i] = 1;
                    r[j] = -1;
                    out.push(r.clone());
                    r[j] = 1;
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Dominant representative of the Weyl orbit of `v`.
fn dominant_rep(f: &Factor, v: &[i64]) -> Vec<i64> {
    match *f {
        Factor::Torus { .. } => v.to_vec(),
        Factor::TypeA1 => vec![v[0].abs()],
        Factor::TypeA { .. } => {
            let mut w = v.to_vec();
            w.sort_unstable_by(|a, b| b.cmp(a));
            w
        }
        Factor::TypeD { rank } => {
            if rank == 1 {
                return v.to_vec();
            }
            let mut w: Vec<i64> = v.iter().map(|x| x.abs()).collect();
            w.sort_unstable_by(|a, b| b.cmp(a));
            let negatives = v.iter().filter(|&&x| x < 0).count();
            let has_zero = v.contains(&0);
            if negatives % 2 == 1 && !has_zero {
                let last = w.len() - 1;
                w[last] = -w[last];
            }
            w
        }
    }
}

/// `lambda - mu` as nonnegative simple-root coefficients, if it is one.
/// Returns the height `sum of coefficients` on success.
fn root_cone_height(f: &Factor, lambda: &[i64], mu: &[i64]) -> Option<i64> {
    match *f {
        Factor::Torus { .. } => (lambda == mu).then_some(0),
        Factor::TypeA1 => {
            let d = lambda[0] - mu[0];
            (d >= 0 && d % 2 == 0).then_some(d / 2)
        }
        Factor::TypeA { rank } => {
            let mut s = 0;
            let mut ht = 0;
            for i in 0..rank {
                s += lambda[i] - mu[i];
                if i + 1 < rank {
                    if s < 0 {
                        return None;
                    }
                    ht += s;
                }
            }
            (s == 0).then_some(ht)
        }
        Factor::TypeD { rank } => {
            if rank == 1 {
                return (lambda == mu).then_some(0);
            }
            let mut s = vec![0i64; rank];
            let mut acc = 0;
            for i in 0..rank {
                acc += lambda[i] - mu[i];
                s[i] = acc;
            }
            for &si in s.iter().take(rank.saturating_sub(2)) {
                if si < 0 {
                    return None;
                }
            }
            if s[rank - 1] % 2 != 0 {
                return None;
            }
            let ck = s[rank - 1] / 2;
            let ck1 = s[rank - 2] - ck;
            if ck < 0 || ck1 < 0 {
                return None;
            }
            Some(s[..rank - 1].iter().sum())
        }
    }
}

fn factor_rho(f: &Factor) -> Vec<i64> {
    // For type A this is the half-sum shifted by a central vector, which
    // cancels in the Freudenthal denominator because |mu| = |lambda|.
    let k = f.rank();
    (0..k).map(|i| (k - 1 - i) as i64).collect()
}

/// Candidate dominant weights `mu <= lambda` for a factor.
fn dominant_candidates(f: &Factor, lambda: &[i64]) -> Vec<Vec<i64>> {
    match *f {
        Factor::Torus { .. } => vec![lambda.to_vec()],
        Factor::TypeA1 => (0..=lambda[0])
            .rev()
            .filter(|t| (lambda[0] - t) % 2 == 0)
            .map(|t| vec![t])
            .collect(),
        Factor::TypeA { rank } => {
            if rank == 0 {
                return vec![Vec::new()];
            }
            let lo = *lambda.last().unwrap();
            let hi = lambda[0];
            crate::weight::dominant_vectors(rank, lo, hi)
                .into_iter()
                .filter(|mu| root_cone_height(f, lambda, mu).is_some())
                .collect()
        }
        Factor::TypeD { rank } => {
            if rank == 1 {
                return vec![lambda.to_vec()];
            }
            crate::weight::zpp_vectors(rank, lambda[0])
                .into_iter()
                .filter(|mu| root_cone_height(f, lambda, mu).is_some())
                .collect()
        }
    }
}

/// Exact dominant weight multiplicities of the irreducible factor
/// representation with highest weight `lambda` (Freudenthal recursion).
fn factor_dominant_mults(f: &Factor, lambda: &[i64]) -> Arc<DomMap> {
    let key = (*f, lambda.to_vec());
    if let Some(hit) = dom_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }

    let mut map = DomMap::new();
    match *f {
        Factor::Torus { .. } => {
            map.insert(lambda.to_vec(), 1);
        }
        Factor::TypeA1 => {
            for mu in dominant_candidates(f, lambda) {
                map.insert(mu, 1);
            }
        }
        Factor::TypeA { .. } | Factor::TypeD { .. } => {
            let mut cands: Vec<(i64, Vec<i64>)> = dominant_candidates(f, lambda)
                .into_iter()
                .map(|mu| (root_cone_height(f, lambda, &mu).unwrap(), mu))
                .collect();
            cands.sort();
            let roots = positive_roots(f);
            let rho = factor_rho(f);
            let lr: Vec<i64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
            let norm_l = dot(&lr, &lr);
            for (ht, mu) in cands {
                if ht == 0 {
                    map.insert(mu, 1);
                    continue;
                }
                let mut num: i64 = 0;
                for alpha in &roots {
                    let mut t = 1;
                    loop {
                        let shifted: Vec<i64> =
                            mu.iter().zip(alpha).map(|(a, b)| a + t * b).collect();
                        let rep = dominant_rep(f, &shifted);
                        let m = map.get(&rep).copied().unwrap_or(0);
                        if m == 0 {
                            break;
                        }
                        num += m * dot(&shifted, alpha);
                        t += 1;
                    }
                }
                let mr: Vec<i64> = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
                let den = norm_l - dot(&mr, &mr);
                debug_assert!(den > 0 && (2 * num) % den == 0);
                map.insert(mu, 2 * num / den);
            }
        }
    }

    let arc = Arc::new(map);
    dom_cache().lock().unwrap().insert(key, arc.clone());
    arc
}

/// Distinct permutations of a multiset, deterministic order.
fn multiset_perms(sorted_desc: &[i64]) -> Vec<Vec<i64>> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &x in sorted_desc {
        *counts.entry(x).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(sorted_desc.len());
    fn rec(
        counts: &mut BTreeMap<i64, usize>,
        cur: &mut Vec<i64>,
        len: usize,
        out: &mut Vec<Vec<i64>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let keys: Vec<i64> = counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&k, _)| k)
            .rev()
            .collect();
        for k in keys {
            *counts.get_mut(&k).unwrap() -= 1;
            cur.push(k);
            rec(counts, cur, len, out);
            cur.pop();
            *counts.get_mut(&k).unwrap() += 1;
        }
    }
    rec(&mut counts, &mut cur, sorted_desc.len(), &mut out);
    out
}

/// Full Weyl orbit of a dominant factor weight.
fn orbit(f: &Factor, dom: &[i64]) -> Vec<Vec<i64>> {
    match *f {
        Factor::Torus { .. } => vec![dom.to_vec()],
        Factor::TypeA1 => {
            if dom[0] == 0 {
                vec![vec![0]]
            } else {
                vec![vec![dom[0]], vec![-dom[0]]]
            }
        }
        Factor::TypeA { .. } => multiset_perms(dom),
        Factor::TypeD { rank } => {
            if rank == 1 {
                return vec![dom.to_vec()];
            }
            // closure under adjacent swaps and the sign-flip reflection
            let mut seen: HashSet<Vec<i64>> = HashSet::new();
            let mut queue = vec![dom.to_vec()];
            seen.insert(dom.to_vec());
            while let Some(v) = queue.pop() {
                for i in 0..rank - 1 {
                    let mut w = v.clone();
                    w.swap(i, i + 1);
                    if seen.insert(w.clone()) {
                        queue.push(w);
                    }
                }
                let mut w = v.clone();
                let (a, b) = (w[rank - 2], w[rank - 1]);
                w[rank - 2] = -b;
                w[rank - 1] = -a;
                if seen.insert(w.clone()) {
                    queue.push(w);
                }
            }
            let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
            out.sort();
            out
        }
    }
}

/// Full weight multiset (all Weyl conjugates) of a factor irrep.
fn factor_full_weights(f: &Factor, lambda: &[i64]) -> Arc<WeightList> {
    let key = (*f, lambda.to_vec());
    if let Some(hit) = full_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let dom = factor_dominant_mults(f, lambda);
    let mut out = Vec::new();
    for (mu, &m) in dom.iter() {
        for w in orbit(f, mu) {
            out.push((w, m));
        }
    }
    out.sort();
    let arc = Arc::new(out);
    full_cache().lock().unwrap().insert(key, arc.clone());
    arc
}

/// Exact dominant weight multiplicities of the irreducible representation
/// of `shape` with the given highest weight. The multiplicity of the
/// highest weight itself is always 1.
pub fn weight_multiplicities(shape: &Shape, highest: &[i64]) -> Result<DomMap> {
    shape.check_dominant(highest)?;
    let per_factor: Vec<Arc<DomMap>> = shape
        .factors
        .iter()
        .zip(shape.slices(highest))
        .map(|(f, s)| factor_dominant_mults(f, s))
        .collect();
    let mut acc: Vec<(Vec<i64>, i64)> = vec![(Vec::new(), 1)];
    for fm in &per_factor {
        let mut next = Vec::with_capacity(acc.len() * fm.len());
        for (prefix, m) in &acc {
            for (mu, &mm) in fm.iter() {
                let mut v = prefix.clone();
                v.extend_from_slice(mu);
                next.push((v, m * mm));
            }
        }
        acc = next;
    }
    Ok(acc.into_iter().collect())
}

/// Full weight multiset of the irreducible representation of `shape`.
pub fn full_weights(shape: &Shape, highest: &[i64]) -> Result<WeightList> {
    shape.check_dominant(highest)?;
    let per_factor: Vec<Arc<WeightList>> = shape
        .factors
        .iter()
        .zip(shape.slices(highest))
        .map(|(f, s)| factor_full_weights(f, s))
        .collect();
    let mut acc: Vec<(Vec<i64>, i64)> = vec![(Vec::new(), 1)];
    for fw in &per_factor {
        let mut next = Vec::with_capacity(acc.len() * fw.len());
        for (prefix, m) in &acc {
            for (w, mm) in fw.iter() {
                let mut v = prefix.clone();
                v.extend_from_slice(w);
                next.push((v, m * mm));
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// A formal character: finite weight-to-multiplicity map over a shape,
/// either on full support or restricted to the dominant chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCharacter {
    pub shape: Shape,
    pub mults: BTreeMap<Vec<i64>, i64>,
    pub dominant_only: bool,
}

impl FormalCharacter {
    pub fn from_full(shape: Shape, mults: BTreeMap<Vec<i64>, i64>) -> FormalCharacter {
        FormalCharacter {
            shape,
            mults,
            dominant_only: false,
        }
    }

    pub fn from_dominant(shape: Shape, mults: BTreeMap<Vec<i64>, i64>) -> FormalCharacter {
        FormalCharacter {
            shape,
            mults,
            dominant_only: true,
        }
    }

    pub fn of_irrep(shape: Shape, highest: &[i64]) -> Result<FormalCharacter> {
        let mults = weight_multiplicities(&shape, highest)?;
        Ok(FormalCharacter::from_dominant(shape, mults))
    }

    /// Total mass; equals the represented dimension for full-support
    /// characters.
    pub fn mass(&self) -> i64 {
        self.mults.values().sum()
    }

    fn dominant_tally(&self) -> BTreeMap<Vec<i64>, i64> {
        if self.dominant_only {
            self.mults.clone()
        } else {
            self.mults
                .iter()
                .filter(|(w, _)| self.shape.is_dominant(w))
                .map(|(w, &m)| (w.clone(), m))
                .collect()
        }
    }
}

/// Peels a dominant-chamber tally into a multiset of highest weights.
/// Fails with [`Error::NotACharacter`] when a negative multiplicity or a
/// non-dominant leading weight shows up.
fn peel(shape: &Shape, mut tally: BTreeMap<Vec<i64>, i64>) -> Result<DomMap> {
    let mut out = DomMap::new();
    tally.retain(|_, m| *m != 0);
    while let Some((h, &m)) = tally.last_key_value() {
        let h = h.clone();
        if m < 0 {
            return Err(Error::NotACharacter(format!(
                "negative multiplicity {m} at weight {h:?} during peeling"
            )));
        }
        if !shape.is_dominant(&h) {
            return Err(Error::NotACharacter(format!(
                "leading weight {h:?} is not dominant"
            )));
        }
        let irrep = weight_multiplicities(shape, &h)?;
        for (w, mw) in irrep {
            let e = tally.entry(w.clone()).or_insert(0);
            *e -= m * mw;
            if *e == 0 {
                tally.remove(&w);
            }
        }
        *out.entry(h).or_insert(0) += m;
    }
    Ok(out)
}

/// Decomposes a formal character into a multiset of highest weights
/// (highest-weight peeling, lexicographically greatest first).
pub fn decompose_character(c: &FormalCharacter) -> Result<DomMap> {
    peel(&c.shape, c.dominant_tally())
}

/// Decomposition of the tensor product of two irreducibles of the same
/// shape, by brute force over weight sums.
pub fn tensor_decompose(shape: &Shape, a: &[i64], b: &[i64]) -> Result<DomMap> {
    let fa = full_weights(shape, a)?;
    let fb = full_weights(shape, b)?;
    let mut tally: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (wa, ma) in &fa {
        for (wb, mb) in &fb {
            let s: Vec<i64> = wa.iter().zip(wb).map(|(x, y)| x + y).collect();
            if shape.is_dominant(&s) {
                *tally.entry(s).or_insert(0) += ma * mb;
            }
        }
    }
    peel(shape, tally)
}

/// Characters of all exterior powers `Lambda^0 .. Lambda^jmax` of the
/// irrep with highest weight `a`, via the elementary-symmetric recursion
/// on the weight multiset.
fn exterior_layers(shape: &Shape, a: &[i64], jmax: usize) -> Result<Vec<BTreeMap<Vec<i64>, i64>>> {
    let mut items: Vec<Vec<i64>> = Vec::new();
    for (w, m) in full_weights(shape, a)? {
        for _ in 0..m {
            items.push(w.clone());
        }
    }
    let zero = vec![0i64; shape.rank()];
    let mut layers: Vec<BTreeMap<Vec<i64>, i64>> = vec![BTreeMap::new(); jmax + 1];
    layers[0].insert(zero, 1);
    for w in &items {
        for d in (0..jmax).rev() {
            let updates: Vec<(Vec<i64>, i64)> = layers[d]
                .iter()
                .map(|(v, &c)| {
                    let s: Vec<i64> = v.iter().zip(w).map(|(x, y)| x + y).collect();
                    (s, c)
                })
                .collect();
            for (s, c) in updates {
                *layers[d + 1].entry(s).or_insert(0) += c;
            }
        }
    }
    Ok(layers)
}

/// Decomposition of the `j`-th exterior power of the irrep with highest
/// weight `a`. Returns an empty multiset when `j` exceeds the dimension.
pub fn exterior_decompose(shape: &Shape, a: &[i64], j: usize) -> Result<DomMap> {
    if (j as u128) > shape.dim(a) {
        return Ok(DomMap::new());
    }
    let layers = exterior_layers(shape, a, j)?;
    let tally: BTreeMap<Vec<i64>, i64> = layers[j]
        .iter()
        .filter(|(w, _)| shape.is_dominant(w))
        .map(|(w, &m)| (w.clone(), m))
        .collect();
    peel(shape, tally)
}

/// Decompositions of every exterior power `Lambda^0 .. Lambda^dim(a)`.
pub fn exterior_all(shape: &Shape, a: &[i64]) -> Result<Vec<DomMap>> {
    let d = shape.dim(a) as usize;
    let layers = exterior_layers(shape, a, d)?;
    layers
        .into_iter()
        .map(|layer| {
            let tally: BTreeMap<Vec<i64>, i64> = layer
                .iter()
                .filter(|(w, _)| shape.is_dominant(w))
                .map(|(w, &m)| (w.clone(), m))
                .collect();
            peel(shape, tally)
        })
        .collect()
}

/// Shape of the maximal compact group `K`.
pub fn k_shape(f: &GroupFamily) -> Shape {
    match *f {
        GroupFamily::Su { m, n } => {
            Shape::new(vec![Factor::TypeA { rank: m }, Factor::TypeA { rank: n }])
        }
        GroupFamily::Soe { n } => {
            Shape::new(vec![Factor::Torus { rank: 1 }, Factor::TypeD { rank: n }])
        }
        GroupFamily::Sostar { n } => Shape::new(vec![Factor::TypeA { rank: n }]),
    }
}

/// Shape of `K_M`, in the coordinate order of [`KMLabel::torus_coords`].
pub fn km_shape(f: &GroupFamily) -> Shape {
    match *f {
        GroupFamily::Su { m, n } => Shape::new(vec![
            Factor::Torus { rank: 1 },
            Factor::TypeA { rank: m - 1 },
            Factor::TypeA { rank: n - 1 },
        ]),
        GroupFamily::Soe { n } => Shape::new(vec![
            Factor::Torus { rank: 1 },
            Factor::TypeD { rank: n - 1 },
        ]),
        GroupFamily::Sostar { n } => {
            Shape::new(vec![Factor::TypeA1, Factor::TypeA { rank: n - 2 }])
        }
    }
}

/// Restriction of a `K`-torus weight to the `K_M`-torus, following the
/// identifications of restricted functionals per family.
pub fn restrict_coords(f: &GroupFamily, v: &[i64]) -> Vec<i64> {
    match *f {
        GroupFamily::Su { m, n } => {
            // \bar eps_1 = \bar eps_{m+n}
            let mut out = Vec::with_capacity(m + n - 1);
            out.push(v[0] + v[m + n - 1]);
            out.extend_from_slice(&v[1..m]);
            out.extend_from_slice(&v[m..m + n - 1]);
            out
        }
        GroupFamily::Soe { .. } => {
            // \bar eps_0 = \bar eps_1
            let mut out = Vec::with_capacity(v.len() - 1);
            out.push(v[0] + v[1]);
            out.extend_from_slice(&v[2..]);
            out
        }
        GroupFamily::Sostar { .. } => {
            // \bar eps_1 = -\bar eps_2
            let mut out = Vec::with_capacity(v.len() - 1);
            out.push(v[0] - v[1]);
            out.extend_from_slice(&v[2..]);
            out
        }
    }
}

/// Dimension of the irreducible `K_M`-representation with the given label.
pub fn km_dimension(f: &GroupFamily, label: &KMLabel) -> u128 {
    km_shape(f).dim(&label.torus_coords())
}

/// Dimension of the irreducible `K`-representation with the given weight.
pub fn k_dimension(f: &GroupFamily, w: &KWeight) -> u128 {
    k_shape(f).dim(&w.torus_coords())
}

/// Product of two `K_M` virtual characters, expanding every label pair by
/// brute-force tensor decomposition.
pub fn tensor_virtual(a: &VirtualChar, b: &VirtualChar) -> Result<VirtualChar> {
    let family = *a.family();
    if b.family() != &family {
        return Err(Error::WrongFamily {
            expected: family.to_string(),
            got: b.family().to_string(),
        });
    }
    let shape = km_shape(&family);
    let mut out = VirtualChar::zero(family);
    for (la, ca) in a.terms() {
        for (lb, cb) in b.terms() {
            let prod = tensor_decompose(&shape, &la.torus_coords(), &lb.torus_coords())?;
            let coef = ca * cb;
            for (v, m) in prod {
                out.add_term(KMLabel::from_torus_coords(&family, &v), &coef * m);
            }
        }
    }
    Ok(out)
}

/// Brute-force restriction oracle: restricts the full weight multiset of
/// the `K`-irrep along the torus embedding and peels the result into
/// `K_M`-irreducibles. Independent of the closed-form branching laws.
pub fn oracle_restrict(f: &GroupFamily, w: &KWeight) -> Result<VirtualChar> {
    w.validate(f)?;
    let ks = k_shape(f);
    let kms = km_shape(f);
    let mut tally: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (wt, m) in full_weights(&ks, &w.torus_coords())? {
        let v = restrict_coords(f, &wt);
        if kms.is_dominant(&v) {
            *tally.entry(v).or_insert(0) += m;
        }
    }
    let peeled = peel(&kms, tally)?;
    let mut out = VirtualChar::zero(*f);
    for (v, m) in peeled {
        out.add_term(KMLabel::from_torus_coords(f, &v), m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(rank: usize) -> Shape {
        Shape::new(vec![Factor::TypeA { rank }])
    }

    fn d(rank: usize) -> Shape {
        Shape::new(vec![Factor::TypeD { rank }])
    }

    #[test]
    fn minuscule_and_a1() {
        let m = weight_multiplicities(&a(2), &[1, 0]).unwrap();
        assert_eq!(m, BTreeMap::from([(vec![1, 0], 1)]));

        let sh = Shape::new(vec![Factor::TypeA1]);
        let m = weight_multiplicities(&sh, &[2]).unwrap();
        assert_eq!(m, BTreeMap::from([(vec![2], 1), (vec![0], 1)]));

        assert!(weight_multiplicities(&a(2), &[0, 1]).is_err());
    }

    #[test]
    fn d2_chiral_piece() {
        let m = weight_multiplicities(&d(2), &[1, 1]).unwrap();
        assert_eq!(m, BTreeMap::from([(vec![1, 1], 1), (vec![0, 0], 1)]));
        // total dimension of the chiral rep is 3
        assert_eq!(d(2).dim(&[1, 1]), 3);
        let full = full_weights(&d(2), &[1, 1]).unwrap();
        assert_eq!(full.iter().map(|(_, m)| m).sum::<i64>(), 3);
    }

    #[test]
    fn adjoint_zero_weight() {
        let m = weight_multiplicities(&a(3), &[1, 0, -1]).unwrap();
        assert_eq!(m.get(&vec![0, 0, 0]), Some(&2));
        assert_eq!(a(3).dim(&[1, 0, -1]), 8);
    }

    #[test]
    fn peeling_examples() {
        // doubled minuscule character
        let mut mults = BTreeMap::new();
        mults.insert(vec![1, 0], 2);
        let c = FormalCharacter::from_dominant(a(2), mults);
        assert_eq!(
            decompose_character(&c).unwrap(),
            BTreeMap::from([(vec![1, 0], 2)])
        );

        // product character (1,0)*(1,0) on type A rank 2
        let t = tensor_decompose(&a(2), &[1, 0], &[1, 0]).unwrap();
        assert_eq!(t, BTreeMap::from([(vec![2, 0], 1), (vec![1, 1], 1)]));

        // type D rank 2: (1,0)x(1,0) = (2,0)+(1,1)+(1,-1)+(0,0), 9+3+3+1=16
        let t = tensor_decompose(&d(2), &[1, 0], &[1, 0]).unwrap();
        assert_eq!(
            t,
            BTreeMap::from([
                (vec![2, 0], 1),
                (vec![1, 1], 1),
                (vec![1, -1], 1),
                (vec![0, 0], 1)
            ])
        );
        let total: u128 = t.iter().map(|(w, &m)| d(2).dim(w) * m as u128).sum();
        assert_eq!(total, 16);

        // a non-character errors out
        let mut bad = BTreeMap::new();
        bad.insert(vec![1, 1], 1);
        bad.insert(vec![1, 0], -1);
        let c = FormalCharacter::from_dominant(a(2), bad);
        assert!(matches!(
            decompose_character(&c),
            Err(Error::NotACharacter(_))
        ));
    }

    #[test]
    fn tensor_with_trivial() {
        let t = tensor_decompose(&a(3), &[2, 1, 0], &[0, 0, 0]).unwrap();
        assert_eq!(t, BTreeMap::from([(vec![2, 1, 0], 1)]));
        let sh = Shape::new(vec![Factor::TypeA1]);
        let t = tensor_decompose(&sh, &[1], &[1]).unwrap();
        assert_eq!(t, BTreeMap::from([(vec![2], 1), (vec![0], 1)]));
    }

    #[test]
    fn exterior_powers() {
        // Lambda^1 is the identity
        let e = exterior_decompose(&a(3), &[2, 0, 0], 1).unwrap();
        assert_eq!(e, BTreeMap::from([(vec![2, 0, 0], 1)]));
        // Lambda^2 of the standard rep of U(3)
        let e = exterior_decompose(&a(3), &[1, 0, 0], 2).unwrap();
        assert_eq!(e, BTreeMap::from([(vec![1, 1, 0], 1)]));
        // beyond the dimension: empty, not an error
        let e = exterior_decompose(&a(3), &[1, 0, 0], 4).unwrap();
        assert!(e.is_empty());
        // sum of dims of all exterior powers is 2^dim
        let sh = a(2);
        let dim = sh.dim(&[2, 0]) as u32;
        let all = exterior_all(&sh, &[2, 0]).unwrap();
        let total: u128 = all
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|(w, &m)| sh.dim(w) * m as u128)
                    .sum::<u128>()
            })
            .sum();
        assert_eq!(total, 1u128 << dim);
    }

    #[test]
    fn exterior_of_su32_ptilde() {
        // Lambda^2 of tau_{(1,0),(-1),0} in SU(3,2): conjugate of (2) is (1,1)
        let fam = GroupFamily::su(3, 2).unwrap();
        let sh = km_shape(&fam);
        let lab = KMLabel::Su {
            mu1: vec![1, 0],
            mu2: vec![-1],
            p: 0,
        };
        let e = exterior_decompose(&sh, &lab.torus_coords(), 2).unwrap();
        assert_eq!(e.len(), 1);
        let (v, m) = e.iter().next().unwrap();
        assert_eq!(*m, 1);
        let out = KMLabel::from_torus_coords(&fam, v);
        assert_eq!(
            out,
            KMLabel::Su {
                mu1: vec![1, 1],
                mu2: vec![-2],
                p: 0
            }
        );
        assert_eq!(km_dimension(&fam, &out), 1);
    }

    #[test]
    fn oracle_restrict_examples() {
        // trivial weight restricts to the trivial label
        let fam = GroupFamily::su(2, 1).unwrap();
        let w = KWeight::Su {
            lambda1: vec![0, 0],
            lambda2: vec![0],
        };
        let vc = oracle_restrict(&fam, &w).unwrap();
        assert_eq!(vc.len(), 1);

        // SU(2,1): pi_{(1,0),(0)} -> tau_{(1),p=0} + tau_{(0),p=1}
        let w = KWeight::Su {
            lambda1: vec![1, 0],
            lambda2: vec![0],
        };
        let vc = oracle_restrict(&fam, &w).unwrap();
        let want1 = KMLabel::Su {
            mu1: vec![1],
            mu2: vec![],
            p: 0,
        };
        let want2 = KMLabel::Su {
            mu1: vec![0],
            mu2: vec![],
            p: 1,
        };
        assert_eq!(vc.coef(&want1), 1.into());
        assert_eq!(vc.coef(&want2), 1.into());
        assert_eq!(vc.len(), 2);

        // SOe(2,4): lambda' = (1,0) -> four one-dimensional labels
        let fam = GroupFamily::soe(2).unwrap();
        let w = KWeight::Soe {
            p: 5,
            lambda: vec![1, 0],
        };
        let vc = oracle_restrict(&fam, &w).unwrap();
        for (q, mu) in [(4, 0), (6, 0), (5, 1), (5, -1)] {
            assert_eq!(vc.coef(&KMLabel::Soe { q, mu: vec![mu] }), 1.into());
        }
        assert_eq!(vc.len(), 4);
    }

    #[test]
    fn freudenthal_matches_weyl_dimension() {
        // total mass of the full multiset equals the Weyl dimension
        for (sh, hw) in [
            (a(3), vec![3, 1, -1]),
            (a(4), vec![2, 1, 0, -1]),
            (d(3), vec![2, 1, 1]),
            (d(3), vec![2, 1, -1]),
            (d(2), vec![3, -2]),
        ] {
            let total: i64 = full_weights(&sh, &hw).unwrap().iter().map(|(_, m)| m).sum();
            assert_eq!(total as u128, sh.dim(&hw), "shape {sh:?} hw {hw:?}");
        }
    }
}
