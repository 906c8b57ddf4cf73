use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CoxeterError;

/// Symmetric matrix of bond orders `m_ij`, `m_ii = 1`, all entries finite.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterMatrix {
    entries: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let l = entries.len();
        if l == 0 {
            return Err(CoxeterError::InvalidMatrix("rank must be positive".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != l {
                return Err(CoxeterError::InvalidMatrix(format!("row {i} has {} entries, expected {l}", row.len())));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j && m != 1 {
                    return Err(CoxeterError::InvalidMatrix(format!("diagonal entry m[{i}][{i}] = {m}, expected 1")));
                }
                if i != j && m < 2 {
                    return Err(CoxeterError::InvalidMatrix(format!("off-diagonal entry m[{i}][{j}] = {m} < 2")));
                }
                if entries[j][i] != m {
                    return Err(CoxeterError::InvalidMatrix(format!("matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(CoxeterMatrix { entries })
    }

    /// Matrix of a Coxeter graph given as labelled edges; unlisted pairs get 2.
    pub fn from_edges(rank: usize, edges: &[(usize, usize, u32)]) -> Result<Self, CoxeterError> {
        let mut m = vec![vec![2u32; rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(i, j, v) in edges {
            if i >= rank || j >= rank || i == j {
                return Err(CoxeterError::InvalidMatrix(format!("bad edge ({i}, {j})")));
            }
            m[i][j] = v;
            m[j][i] = v;
        }
        CoxeterMatrix::new(m)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn all_odd(&self) -> bool {
        self.entries.iter().flatten().all(|m| m % 2 == 1)
    }

    /// Resolves names such as `A3`, `B3`, `D4`, `E6`, `F4`, `G2`, `H3`, `I2(7)`.
    pub fn preset(name: &str) -> Result<Self, CoxeterError> {
        let unknown = || CoxeterError::UnknownPreset(name.to_string());
        let name = name.trim();
        if let Some(rest) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let m: u32 = rest.parse().map_err(|_| unknown())?;
            if m < 2 {
                return Err(unknown());
            }
            return CoxeterMatrix::from_edges(2, &[(0, 1, m)]);
        }
        let (family, n) = name.split_at(1);
        let n: usize = n.parse().map_err(|_| unknown())?;
        let chain = |len: usize| -> Vec<(usize, usize, u32)> { (1..len).map(|i| (i - 1, i, 3)).collect() };
        match (family, n) {
            ("A", n) if n >= 1 => CoxeterMatrix::from_edges(n, &chain(n)),
            ("B" | "C", n) if n >= 2 => {
                let mut e = chain(n);
                e[n - 2].2 = 4;
                CoxeterMatrix::from_edges(n, &e)
            }
            ("D", n) if n >= 4 => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1, 3));
                CoxeterMatrix::from_edges(n, &e)
            }
            ("E", n @ 6..=8) => {
                let mut e = vec![(0, 2, 3), (1, 3, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1, 3)));
                CoxeterMatrix::from_edges(n, &e)
            }
            ("F", 4) => CoxeterMatrix::from_edges(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)]),
            ("G", 2) => CoxeterMatrix::from_edges(2, &[(0, 1, 6)]),
            ("H", n @ 2..=4) => {
                let mut e = chain(n);
                e[0].2 = 5;
                CoxeterMatrix::from_edges(n, &e)
            }
            _ => Err(unknown()),
        }
    }

    /// Parses the text format: the rank on the first line, then one row per line.
    pub fn parse_text(text: &str) -> Result<Self, CoxeterError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let bad = |msg: String| CoxeterError::InvalidMatrix(msg);
        let l: usize = lines
            .next()
            .ok_or_else(|| bad("empty input".into()))?
            .parse()
            .map_err(|_| bad("first line must be the rank".into()))?;
        let mut rows = Vec::with_capacity(l);
        for i in 0..l {
            let line = lines.next().ok_or_else(|| bad(format!("missing row {i}")))?;
            let row: Result<Vec<u32>, _> = line.split_whitespace().map(str::parse).collect();
            rows.push(row.map_err(|_| bad(format!("row {i} is not a list of integers")))?);
        }
        if lines.next().is_some() {
            return Err(bad("trailing data after matrix".into()));
        }
        CoxeterMatrix::new(rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.rank());
        for row in &self.entries {
            let r: Vec<String> = row.iter().map(u32::to_string).collect();
            s.push_str(&r.join(" "));
            s.push('\n');
        }
        s
    }

    /// Connected components of the graph on generators with an edge for every
    /// odd `m_ij`, `i ≠ j`. Component ids are ordered by smallest generator.
    pub fn odd_components(&self) -> Vec<usize> {
        let l = self.rank();
        let mut comp = vec![usize::MAX; l];
        let mut next = 0;
        for start in 0..l {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(i) = stack.pop() {
                for j in 0..l {
                    if i != j && self.entries[i][j] % 2 == 1 && comp[j] == usize::MAX {
                        comp[j] = next;
                        stack.push(j);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

impl FromStr for CoxeterMatrix {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CoxeterMatrix::parse_text(s)
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let b3 = CoxeterMatrix::preset("B3").unwrap();
        assert_eq!(b3.entries(), &[vec![1, 3, 2], vec![3, 1, 4], vec![2, 4, 1]]);
        let d4 = CoxeterMatrix::preset("D4").unwrap();
        assert_eq!(d4.get(1, 2), 3);
        assert_eq!(d4.get(1, 3), 3);
        assert_eq!(d4.get(2, 3), 2);
        assert_eq!(CoxeterMatrix::preset("I2(7)").unwrap().get(0, 1), 7);
        assert_eq!(CoxeterMatrix::preset("H3").unwrap().get(0, 1), 5);
        assert_eq!(CoxeterMatrix::preset("E6").unwrap().get(1, 3), 3);
        assert!(CoxeterMatrix::preset("Q7").is_err());
        assert!(CoxeterMatrix::preset("I2(1)").is_err());
        assert!(CoxeterMatrix::preset("D3").is_err());
    }

    #[test]
    fn validation() {
        assert!(CoxeterMatrix::new(vec![vec![1, 3], vec![2, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![2]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![]).is_err());
    }

    #[test]
    fn text_format() {
        let m = CoxeterMatrix::preset("B3").unwrap();
        let text = m.to_text();
        assert_eq!(text, "3\n1 3 2\n3 1 4\n2 4 1\n");
        assert_eq!(text.parse::<CoxeterMatrix>().unwrap(), m);
        assert!("2\n1 3\n".parse::<CoxeterMatrix>().is_err());
        assert!("x\n".parse::<CoxeterMatrix>().is_err());
    }

    #[test]
    fn odd_components() {
        assert_eq!(CoxeterMatrix::preset("B3").unwrap().odd_components(), vec![0, 0, 1]);
        assert_eq!(CoxeterMatrix::preset("A4").unwrap().odd_components(), vec![0; 4]);
        assert_eq!(CoxeterMatrix::preset("I2(4)").unwrap().odd_components(), vec![0, 1]);
        assert_eq!(CoxeterMatrix::preset("H3").unwrap().odd_components(), vec![0, 0, 0]);
    }
}
