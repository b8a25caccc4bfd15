//! Finite groups given by Cayley tables.

use super::GroupError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    pub elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(name: &str, elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = elements.len();
        if n == 0 {
            return Err(GroupError::Table("empty group".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::Table(format!("Cayley table must be {n} x {n}")));
        }
        if let Some(v) = table.iter().flatten().find(|&&v| v >= n) {
            return Err(GroupError::Table(format!("entry {v} out of range")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GroupError::Table("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| GroupError::Table(format!("element {x} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::Table(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.to_string(), elements, table, identity, inverse })
    }

    pub fn cyclic(k: usize) -> Result<Self, GroupError> {
        if k == 0 || k > 8 {
            return Err(GroupError::UnknownPreset(format!("Z{k}")));
        }
        let elements = (0..k).map(|i| i.to_string()).collect();
        let table = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        FiniteGroup::from_table(&format!("Z{k}"), elements, table)
    }

    /// `Z2 x Z2` with index `a1 + 2·a2`.
    pub fn klein() -> Self {
        let elements = ["(0,0)", "(1,0)", "(0,1)", "(1,1)"].map(String::from).to_vec();
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        FiniteGroup::from_table("Z2xZ2", elements, table).expect("Klein table is a group")
    }

    /// Permutations of `{0,1,2}` in lexicographic order; `(p·q)(i) = p(q(i))`.
    pub fn s3() -> Self {
        let perms: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ];
        from_permutations("S3", &perms)
    }

    /// Symmetries of a square: index `k` is `r^k`, index `4 + k` is `r^k·s`.
    pub fn d4() -> Self {
        let r = [1, 2, 3, 0];
        let s = [0, 3, 2, 1];
        let mut perms = Vec::new();
        let mut rk: Vec<usize> = (0..4).collect();
        for _ in 0..4 {
            perms.push(rk.clone());
            rk = (0..4).map(|i| r[rk[i]]).collect();
        }
        for k in 0..4 {
            let p: Vec<usize> = (0..4).map(|i| perms[k][s[i]]).collect();
            perms.push(p);
        }
        from_permutations("D4", &perms)
    }

    /// `Z<k>` for `k ≤ 8`, `Z2xZ2`, `S3` or `D4`.
    pub fn preset(name: &str) -> Result<Self, GroupError> {
        let key = name.trim().to_ascii_uppercase().replace(['×', '*'], "X");
        match key.as_str() {
            "Z2XZ2" | "KLEIN" | "V4" => Ok(FiniteGroup::klein()),
            "S3" => Ok(FiniteGroup::s3()),
            "D4" => Ok(FiniteGroup::d4()),
            _ => key
                .strip_prefix('Z')
                .or_else(|| key.strip_prefix('C'))
                .and_then(|k| k.parse::<usize>().ok())
                .map_or_else(|| Err(GroupError::UnknownPreset(name.to_string())), FiniteGroup::cyclic),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g·h·g⁻¹`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Coordinates over `Z2` when every element squares to the identity.
    ///
    /// Generators are chosen greedily by smallest index, so for `Z2xZ2` the
    /// coordinates of index `i` are the bits of `i`.
    pub fn elementary_abelian_coords(&self) -> Option<Vec<u32>> {
        if !self.is_abelian() || (0..self.order()).any(|x| self.mul(x, x) != self.identity) {
            return None;
        }
        let mut coords = vec![None; self.order()];
        coords[self.identity] = Some(0u32);
        let mut span = vec![self.identity];
        let mut bit = 0;
        while span.len() < self.order() {
            let g = (0..self.order()).find(|x| coords[*x].is_none())?;
            let mut next = span.clone();
            for &x in &span {
                let y = self.mul(x, g);
                coords[y] = Some(coords[x].unwrap() | (1 << bit));
                next.push(y);
            }
            span = next;
            bit += 1;
        }
        coords.into_iter().collect()
    }
}

fn from_permutations(name: &str, perms: &[Vec<usize>]) -> FiniteGroup {
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed under composition");
    let table = perms
        .iter()
        .map(|p| perms.iter().map(|q| index(&q.iter().map(|&i| p[i]).collect())).collect())
        .collect();
    let elements = perms.iter().map(|p| p.iter().map(|i| i.to_string()).collect::<String>()).collect();
    FiniteGroup::from_table(name, elements, table).expect("permutation group")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_groups() {
        for name in ["Z1", "Z3", "z8", "C5", "Z2xZ2", "S3", "D4"] {
            let g = FiniteGroup::preset(name).unwrap();
            assert_eq!(g.identity(), 0, "{name}");
        }
        assert_eq!(FiniteGroup::s3().order(), 6);
        assert_eq!(FiniteGroup::d4().order(), 8);
        assert!(!FiniteGroup::d4().is_abelian());
        assert!(FiniteGroup::preset("Z9").is_err());
        assert!(FiniteGroup::preset("A5").is_err());
    }

    #[test]
    fn d4_relations() {
        let g = FiniteGroup::d4();
        let (r, s) = (1, 4);
        assert_eq!(g.mul(g.mul(r, r), g.mul(r, r)), 0);
        assert_eq!(g.mul(s, s), 0);
        assert_eq!(g.conj(s, r), g.inv(r));
    }

    #[test]
    fn rejects_non_groups() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table("x", vec!["a".into(), "b".into()], bad).is_err());
        let ragged = vec![vec![0, 1], vec![1]];
        assert!(FiniteGroup::from_table("x", vec!["a".into(), "b".into()], ragged).is_err());
    }

    #[test]
    fn klein_coords_are_bits() {
        assert_eq!(FiniteGroup::klein().elementary_abelian_coords(), Some(vec![0, 1, 2, 3]));
        assert_eq!(FiniteGroup::cyclic(2).unwrap().elementary_abelian_coords(), Some(vec![0, 1]));
        assert_eq!(FiniteGroup::cyclic(4).unwrap().elementary_abelian_coords(), None);
    }
}
