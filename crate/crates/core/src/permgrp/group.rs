//! Stabilizer chains by randomized Schreier-Sims followed by a deterministic
//! pass over all Schreier generators.

use std::cell::OnceCell;
use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Dsu, Perm, PermError};

const ABSENT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;
const RANDOM_STREAK: usize = 40;
/// Transversal elements are cached while `orbit · degree` stays below this.
const CACHE_ENTRIES: usize = 1 << 24;
const SEED: u64 = 0x5c4e_1e55;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    inv_gens: Vec<Perm>,
    /// Schreier vector: the generator used to first reach each point.
    sv: Vec<u32>,
    orbit: Vec<u32>,
    /// Cached `u_b^{-1}` for orbit points `b`.
    cache: Vec<Option<Perm>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut sv = vec![ABSENT; degree];
        sv[base] = ROOT;
        Self {
            base,
            gens: vec![],
            inv_gens: vec![],
            sv,
            orbit: vec![base as u32],
            cache: vec![],
        }
    }

    fn add_gen(&mut self, g: Perm) {
        self.inv_gens.push(g.inverse());
        self.gens.push(g);
        let degree = self.sv.len();
        self.sv.iter_mut().for_each(|x| *x = ABSENT);
        self.sv[self.base] = ROOT;
        self.orbit.clear();
        self.orbit.push(self.base as u32);
        let mut i = 0;
        while i < self.orbit.len() {
            let b = self.orbit[i] as usize;
            for (k, s) in self.gens.iter().enumerate() {
                let c = s.image(b);
                if self.sv[c] == ABSENT {
                    self.sv[c] = k as u32;
                    self.orbit.push(c as u32);
                }
            }
            i += 1;
        }
        self.cache = if self.orbit.len().saturating_mul(degree) <= CACHE_ENTRIES {
            vec![None; degree]
        } else {
            vec![]
        };
    }

    /// `u_b^{-1}`, where `u_b` maps the base point to `b`.
    fn coset_inverse(&mut self, b: usize) -> Perm {
        if let Some(Some(u)) = self.cache.get(b) {
            return u.clone();
        }
        let u = self.trace_back(b);
        if !self.cache.is_empty() {
            self.cache[b] = Some(u.clone());
        }
        u
    }

    fn trace_back(&self, b: usize) -> Perm {
        if let Some(Some(u)) = self.cache.get(b) {
            return u.clone();
        }
        let degree = self.sv.len();
        let mut u = Perm::identity(degree);
        let mut x = b;
        while self.sv[x] != ROOT {
            let k = self.sv[x] as usize;
            u = u.then(&self.inv_gens[k]);
            x = self.inv_gens[k].image(x);
        }
        u
    }
}

#[derive(Debug, Clone, Default)]
struct Chain {
    levels: Vec<Level>,
}

impl Chain {
    /// Sifts `h` from level `start`; returns the level where it stopped and the residue.
    fn sift(&mut self, mut h: Perm, start: usize) -> (usize, Perm) {
        for l in start..self.levels.len() {
            let b = h.image(self.levels[l].base);
            if self.levels[l].sv[b] == ABSENT {
                return (l, h);
            }
            h = h.then(&self.levels[l].coset_inverse(b));
        }
        (self.levels.len(), h)
    }

    /// Sifts `h` and extends the chain with the residue; returns whether it grew.
    fn sift_and_add(&mut self, h: Perm, start: usize, weight: &[usize]) -> Option<usize> {
        let (l, res) = self.sift(h, start);
        if res.is_identity() {
            return None;
        }
        if l == self.levels.len() {
            let base = pick_base_point(&res, weight);
            self.levels.push(Level::new(base, res.degree()));
        }
        for level in &mut self.levels[..=l] {
            level.add_gen(res.clone());
        }
        Some(l)
    }

    fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }
}

/// Among points moved by `h`, one in the largest orbit of the whole group,
/// ties broken by the length of its cycle under `h`.
fn pick_base_point(h: &Perm, weight: &[usize]) -> usize {
    let mut best = None;
    let mut seen = vec![false; h.degree()];
    for start in h.moved_points() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = h.image(x);
        }
        let key = (weight[start], len);
        if best.map_or(true, |(k, _)| key > k) {
            best = Some((key, start));
        }
    }
    best.expect("non-identity residue").1
}

/// A permutation group given by generators; its stabilizer chain is built on
/// first use.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceCell<Chain>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self, PermError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(g.degree(), degree));
        }
        Ok(Self { degree, gens, chain: OnceCell::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        Self { degree, gens: vec![], chain: OnceCell::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Points reachable from `point`, sorted.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>, PermError> {
        if point >= self.degree {
            return Err(PermError::PointOutOfRange(point));
        }
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = VecDeque::from([point]);
        let mut out = vec![point];
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// All orbits, each sorted, listed by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut dsu = Dsu::new(self.degree);
        for g in &self.gens {
            for x in 0..self.degree {
                dsu.union(x, g.image(x));
            }
        }
        let mut idx = vec![usize::MAX; self.degree];
        let mut out: Vec<Vec<usize>> = vec![];
        for x in 0..self.degree {
            let r = dsu.find(x);
            if idx[r] == usize::MAX {
                idx[r] = out.len();
                out.push(vec![]);
            }
            out[idx[r]].push(x);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    fn chain(&self) -> &Chain {
        self.chain.get_or_init(|| build_chain(self.degree, &self.gens))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.base).collect()
    }

    /// Orbit lengths along the stabilizer chain.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let mut h = g.clone();
        for level in &self.chain().levels {
            let b = h.image(level.base);
            if level.sv[b] == ABSENT {
                return false;
            }
            h = h.then(&level.trace_back(b));
        }
        h.is_identity()
    }
}

fn build_chain(degree: usize, gens: &[Perm]) -> Chain {
    let mut chain = Chain::default();
    let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    if gens.is_empty() {
        return chain;
    }
    let weight = {
        let mut dsu = Dsu::new(degree);
        for g in &gens {
            for x in 0..degree {
                dsu.union(x, g.image(x));
            }
        }
        let mut size = vec![0usize; degree];
        for x in 0..degree {
            let r = dsu.find(x);
            size[r] += 1;
        }
        (0..degree).map(|x| size[dsu.find(x)]).collect::<Vec<_>>()
    };
    for g in &gens {
        chain.sift_and_add(g.clone(), 0, &weight);
    }

    // Product replacement: a pool of group elements and an accumulator.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pool: Vec<Perm> = gens.iter().cycle().take(gens.len().max(10)).cloned().collect();
    let mut acc = Perm::identity(degree);
    let step = |pool: &mut Vec<Perm>, acc: &mut Perm, rng: &mut ChaCha8Rng| {
        let i = rng.gen_range(0..pool.len());
        let mut j = rng.gen_range(0..pool.len() - 1);
        if j >= i {
            j += 1;
        }
        pool[i] = if rng.gen_bool(0.5) { pool[i].then(&pool[j]) } else { pool[j].then(&pool[i]) };
        *acc = acc.then(&pool[i]);
        acc.clone()
    };
    for _ in 0..50 {
        step(&mut pool, &mut acc, &mut rng);
    }
    let mut streak = 0;
    while streak < RANDOM_STREAK {
        let x = step(&mut pool, &mut acc, &mut rng);
        if chain.sift_and_add(x, 0, &weight).is_some() {
            streak = 0;
        } else {
            streak += 1;
        }
    }

    // Every Schreier generator of every level must sift through the levels below.
    let mut i = chain.levels.len();
    while i > 0 {
        let l = i - 1;
        let mut grown = None;
        'scan: for oi in 0..chain.levels[l].orbit.len() {
            let b = chain.levels[l].orbit[oi] as usize;
            for k in 0..chain.levels[l].gens.len() {
                let level = &mut chain.levels[l];
                let c = level.gens[k].image(b);
                let ub = level.coset_inverse(b).inverse();
                let sch = ub.then(&level.gens[k]).then(&level.coset_inverse(c));
                if sch.is_identity() {
                    continue;
                }
                if let Some(at) = chain.sift_and_add(sch, l + 1, &weight) {
                    grown = Some(at);
                    break 'scan;
                }
            }
        }
        i = match grown {
            Some(at) => at.max(l) + 1,
            None => l,
        };
        if i > chain.levels.len() {
            i = chain.levels.len();
        }
    }
    chain
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        let s5 = PermGroup::new(
            5,
            vec![
                Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
                Perm::from_cycles(5, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(s5.order(), 120);
        let a5 = PermGroup::new(
            5,
            vec![
                Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
                Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a5.order(), 60);
        assert!(!a5.contains(&Perm::from_cycles(5, &[&[0, 1]]).unwrap()));
        assert!(s5.contains(&Perm::from_cycles(5, &[&[0, 1]]).unwrap()));
        assert_eq!(PermGroup::trivial(6).order(), 1);
        assert_eq!(PermGroup::trivial(6).orbit(5).unwrap(), vec![5]);
        let c3 = PermGroup::new(3, vec![Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()]).unwrap();
        assert_eq!(c3.orbit(0).unwrap(), vec![0, 1, 2]);
        assert_eq!(c3.order(), 3);
        assert!(c3.orbit(3).is_err());
    }

    #[test]
    fn direct_products() {
        // Z_2^6 acting on 12 points as six disjoint transpositions, plus S_4 on four more.
        let mut gens: Vec<Perm> = (0..6)
            .map(|i| Perm::from_cycles(16, &[&[2 * i, 2 * i + 1]]).unwrap())
            .collect();
        gens.push(Perm::from_cycles(16, &[&[12, 13, 14, 15]]).unwrap());
        gens.push(Perm::from_cycles(16, &[&[12, 13]]).unwrap());
        let g = PermGroup::new(16, gens).unwrap();
        assert_eq!(g.order(), 64 * 24);
        assert_eq!(g.orbits().len(), 7);
        let prod: u128 = g.basic_orbit_lengths().iter().map(|&x| x as u128).product();
        assert_eq!(prod, g.order());
    }

    #[test]
    fn large_symmetric_group() {
        let n = 12u32;
        let cyc: Vec<u32> = (0..n).collect();
        let g = PermGroup::new(
            n as usize,
            vec![
                Perm::from_cycles(n as usize, &[&cyc]).unwrap(),
                Perm::from_cycles(n as usize, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g.order(), (1..=12u128).product());
    }
}
