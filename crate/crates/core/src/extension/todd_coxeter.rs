//! HLT coset enumeration over the trivial subgroup.
//!
//! Letters are column indices: `2g` is generator `g`, `2g + 1` its inverse.

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    Overflow { cap: usize },
}

pub fn gen(g: usize) -> usize {
    2 * g
}

pub fn inv(g: usize) -> usize {
    2 * g + 1
}

fn inverse_letter(x: usize) -> usize {
    x ^ 1
}

/// Complete coset table, standardized so that coset 0 is the trivial coset
/// and the remaining cosets appear in breadth-first order.
#[derive(Debug, Clone)]
pub struct CosetTable {
    width: usize,
    table: Vec<u32>,
}

impl CosetTable {
    pub fn num_cosets(&self) -> usize {
        self.table.len() / self.width
    }

    pub fn num_generators(&self) -> usize {
        self.width / 2
    }

    /// Image of coset `c` under letter `x`.
    pub fn act(&self, c: usize, x: usize) -> usize {
        self.table[c * self.width + x] as usize
    }
}

struct Enumerator<'a> {
    width: usize,
    relators: &'a [Vec<usize>],
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
    queue: Vec<usize>,
}

enum Step {
    Done,
    Full,
}

impl<'a> Enumerator<'a> {
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.width + x]
    }

    fn set(&mut self, c: usize, x: usize, d: u32) {
        self.table[c * self.width + x] = d;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), ()> {
        if self.live >= self.cap {
            return Err(());
        }
        let d = self.parent.len();
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat_n(UNDEF, self.width));
        self.live += 1;
        self.set(c, x, d as u32);
        self.set(d, inverse_letter(x), c as u32);
        Ok(())
    }

    fn rep(&mut self, k: usize) -> usize {
        let mut l = k;
        while self.parent[l] as usize != l {
            l = self.parent[l] as usize;
        }
        let mut m = k;
        while self.parent[m] as usize != l {
            let next = self.parent[m] as usize;
            self.parent[m] = l as u32;
            m = next;
        }
        l
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (p, q) = (self.rep(a), self.rep(b));
        if p != q {
            let (lo, hi) = (p.min(q), p.max(q));
            self.parent[hi] = lo as u32;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.width {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                let d = d as usize;
                let xi = inverse_letter(x);
                if self.get(d, xi) as usize == g {
                    self.set(d, xi, UNDEF);
                }
                let (mu, nu) = (self.rep(g), self.rep(d));
                if self.get(mu, x) != UNDEF {
                    let t = self.get(mu, x) as usize;
                    self.merge(nu, t);
                } else if self.get(nu, xi) != UNDEF {
                    let t = self.get(nu, xi) as usize;
                    self.merge(mu, t);
                } else {
                    self.set(mu, x, nu as u32);
                    self.set(nu, xi, mu as u32);
                }
            }
        }
    }

    /// Scans relator `w` at coset `c`, defining new cosets when `fill`.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> Result<(), ()> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != UNDEF {
                f = self.get(f, w[i]) as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, inverse_letter(w[j as usize])) != UNDEF {
                b = self.get(b, inverse_letter(w[j as usize])) as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i], b as u32);
                self.set(b, inverse_letter(w[i]), f as u32);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn process(&mut self, c: usize) -> Step {
        for r in 0..self.relators.len() {
            if !self.is_live(c) {
                return Step::Done;
            }
            let rel = self.relators[r].clone();
            if self.scan(c, &rel, true).is_err() {
                return Step::Full;
            }
        }
        for x in 0..self.width {
            if !self.is_live(c) {
                return Step::Done;
            }
            if self.get(c, x) == UNDEF && self.define(c, x).is_err() {
                return Step::Full;
            }
        }
        Step::Done
    }

    fn lookahead(&mut self) {
        let mut c = 0;
        while c < self.parent.len() {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let rel = self.relators[r].clone();
                let _ = self.scan(c, &rel, false);
            }
            c += 1;
        }
    }

    /// Renumbers live cosets in order; returns the old-to-new map.
    fn compact(&mut self) -> Vec<u32> {
        let n = self.parent.len();
        let mut map = vec![UNDEF; n];
        let mut next = 0u32;
        for (c, m) in map.iter_mut().enumerate() {
            if self.parent[c] as usize == c {
                *m = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.width);
        for c in 0..n {
            if map[c] == UNDEF {
                continue;
            }
            for x in 0..self.width {
                let d = self.get(c, x);
                table.push(if d == UNDEF { UNDEF } else { map[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.live = next as usize;
        map
    }
}

/// Enumerates the cosets of the trivial subgroup of `⟨gens | relators⟩`,
/// keeping at most `cap` live cosets.
pub fn enumerate(ngens: usize, relators: &[Vec<usize>], cap: usize) -> Result<CosetTable, EnumerationError> {
    let width = 2 * ngens;
    let mut e = Enumerator {
        width,
        relators,
        table: vec![UNDEF; width],
        parent: vec![0],
        live: 1,
        cap: cap.max(1),
        queue: Vec::new(),
    };
    let mut c = 0;
    while c < e.parent.len() {
        if e.is_live(c) {
            if let Step::Full = e.process(c) {
                e.lookahead();
                let map = e.compact();
                if e.live >= e.cap {
                    return Err(EnumerationError::Overflow { cap });
                }
                // Resume at the first surviving coset at or after `c`.
                c = map[c..].iter().find(|&&m| m != UNDEF).map_or(e.parent.len(), |&m| m as usize);
                continue;
            }
        }
        c += 1;
    }
    e.compact();
    Ok(standardize(&e.table, width))
}

fn standardize(table: &[u32], width: usize) -> CosetTable {
    let n = table.len() / width;
    let mut order = vec![0usize];
    let mut map = vec![UNDEF; n];
    map[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for x in 0..width {
            let d = table[c * width + x] as usize;
            if map[d] == UNDEF {
                map[d] = order.len() as u32;
                order.push(d);
            }
        }
        i += 1;
    }
    let mut out = vec![0u32; n * width];
    for (new, &old) in order.iter().enumerate() {
        for x in 0..width {
            out[new * width + x] = map[table[old * width + x] as usize];
        }
    }
    CosetTable { width, table: out }
}
