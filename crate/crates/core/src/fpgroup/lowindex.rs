use std::collections::VecDeque;
use std::fmt;

use super::GroupPresentation;
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

const UNDEF: u32 = u32::MAX;

/// A transitive permutation action of a finitely presented group on
/// `0..index`; the represented subgroup is the stabilizer of point 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetTable {
    /// `images[x][c]` is the image of point `c` under generator `x`.
    images: Vec<Vec<u32>>,
}

impl CosetTable {
    /// Wraps explicit generator images; checks that each is a permutation.
    pub fn new(images: Vec<Vec<u32>>) -> Result<Self> {
        let index = images.first().map_or(1, Vec::len);
        for (x, perm) in images.iter().enumerate() {
            if perm.len() != index {
                return Err(Error::InvalidCosetTable(format!("generator {x} acts on {} points", perm.len())));
            }
            let mut hit = vec![false; index];
            for &c in perm {
                if c as usize >= index || std::mem::replace(&mut hit[c as usize], true) {
                    return Err(Error::InvalidCosetTable(format!("generator {x} is not a permutation")));
                }
            }
        }
        Ok(CosetTable { images })
    }

    pub fn index(&self) -> usize {
        self.images.first().map_or(1, Vec::len)
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, generator: usize) -> &[u32] {
        &self.images[generator]
    }

    /// Point reached from `c` by reading `w` left to right.
    pub fn act(&self, c: u32, w: &Word) -> u32 {
        let inv = self.inverses();
        w.iter().fold(c, |c, l| if l.inverse { inv[l.id as usize][c as usize] } else { self.images[l.id as usize][c as usize] })
    }

    fn inverses(&self) -> Vec<Vec<u32>> {
        self.images
            .iter()
            .map(|p| {
                let mut q = vec![0; p.len()];
                for (c, &d) in p.iter().enumerate() {
                    q[d as usize] = c as u32;
                }
                q
            })
            .collect()
    }

    fn is_transitive(&self) -> bool {
        let n = self.index();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0u32]);
        let inv = self.inverses();
        while let Some(c) = queue.pop_front() {
            for p in self.images.iter().chain(inv.iter()) {
                let d = p[c as usize];
                if !std::mem::replace(&mut seen[d as usize], true) {
                    queue.push_back(d);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The action is transitive and every relator fixes every point.
    pub fn is_valid_for(&self, p: &GroupPresentation) -> bool {
        self.generator_count() == p.generator_count()
            && self.is_transitive()
            && (0..self.index() as u32).all(|c| p.relators.iter().all(|r| self.act(c, r) == c))
    }

    /// Renumbers points in order of first appearance when scanning from `base`
    /// (points in order, generator columns `x₀, x₀⁻¹, x₁, …`).
    pub fn standardized_from(&self, base: u32) -> CosetTable {
        let n = self.index();
        let inv = self.inverses();
        let mut relabel = vec![UNDEF; n];
        let mut order = vec![base];
        relabel[base as usize] = 0;
        let mut i = 0;
        while i < order.len() {
            let c = order[i] as usize;
            for x in 0..self.images.len() {
                for d in [self.images[x][c], inv[x][c]] {
                    if relabel[d as usize] == UNDEF {
                        relabel[d as usize] = order.len() as u32;
                        order.push(d);
                    }
                }
            }
            i += 1;
        }
        let images = self
            .images
            .iter()
            .map(|p| order.iter().map(|&c| relabel[p[c as usize] as usize]).collect())
            .collect();
        CosetTable { images }
    }

    /// Number of distinct subgroups conjugate to this one.
    pub fn conjugacy_class_size(&self) -> usize {
        let mut tables: Vec<CosetTable> = (0..self.index() as u32).map(|b| self.standardized_from(b)).collect();
        tables.sort();
        tables.dedup();
        tables.len()
    }
}

impl fmt::Display for CosetTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, p) in self.images.iter().enumerate() {
            if x > 0 {
                f.write_str("; ")?;
            }
            let pts: Vec<String> = p.iter().map(|c| (c + 1).to_string()).collect();
            write!(f, "g{}: [{}]", x + 1, pts.join(" "))?;
        }
        Ok(())
    }
}

/// Partial coset table during the search. Columns are `2x` for generator `x`
/// and `2x + 1` for its inverse.
#[derive(Clone)]
struct Partial {
    cols: usize,
    table: Vec<u32>,
    count: usize,
}

impl Partial {
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.cols + col]
    }

    /// Sets `c·col = d` and the inverse entry; false on conflict.
    fn set(&mut self, c: u32, col: usize, d: u32, trail: &mut Vec<usize>) -> bool {
        let inv = col ^ 1;
        let a = c as usize * self.cols + col;
        let b = d as usize * self.cols + inv;
        match (self.table[a], self.table[b]) {
            (UNDEF, UNDEF) => {
                self.table[a] = d;
                trail.push(a);
                if a != b {
                    self.table[b] = c;
                    trail.push(b);
                }
                true
            }
            (x, y) => x == d && y == c,
        }
    }
}

fn column(l: Letter) -> usize {
    2 * l.id as usize + usize::from(l.inverse)
}

/// Scans every relator from every defined point, filling forced entries.
/// Returns false if some relator cannot close.
fn propagate(t: &mut Partial, relators: &[Vec<usize>], trail: &mut Vec<usize>) -> bool {
    loop {
        let mut progress = false;
        for c in 0..t.count as u32 {
            for r in relators {
                let mut f = c;
                let mut i = 0;
                while i < r.len() {
                    let d = t.get(f, r[i]);
                    if d == UNDEF {
                        break;
                    }
                    f = d;
                    i += 1;
                }
                if i == r.len() {
                    if f != c {
                        return false;
                    }
                    continue;
                }
                let mut b = c;
                let mut j = r.len();
                while j > i {
                    let d = t.get(b, r[j - 1] ^ 1);
                    if d == UNDEF {
                        break;
                    }
                    b = d;
                    j -= 1;
                }
                if j == i {
                    if f != b {
                        return false;
                    }
                } else if j == i + 1 {
                    if !t.set(f, r[i], b, trail) {
                        return false;
                    }
                    progress = true;
                }
            }
        }
        if !progress {
            return true;
        }
    }
}

/// One coset table per conjugacy class of subgroups of index at most `n`.
///
/// Standard tables are searched by backtracking: the first undefined entry is
/// filled with an existing point or a fresh one, relators are scanned to
/// deduce or refute entries, and a complete table is kept only when no other
/// base point yields a smaller standard table.
pub fn low_index_subgroups(p: &GroupPresentation, n: usize) -> Vec<CosetTable> {
    let g = p.generator_count();
    let cols = 2 * g;
    let n = n.max(1);
    let relators: Vec<Vec<usize>> = p.relators.iter().map(|w| w.iter().map(column).collect()).collect();
    let mut out = Vec::new();
    let start = Partial { cols, table: vec![UNDEF; n * cols.max(1)], count: 1 };
    let mut trail = Vec::new();
    let mut t = start;
    if propagate(&mut t, &relators, &mut trail) {
        search(&mut t, n, &relators, &mut out);
    }
    out.sort_by_key(|c: &CosetTable| c.index());
    out
}

fn search(t: &mut Partial, n: usize, relators: &[Vec<usize>], out: &mut Vec<CosetTable>) {
    let first_undef = (0..t.count * t.cols).find(|&i| t.table[i] == UNDEF);
    let Some(slot) = first_undef else {
        let table = complete(t);
        if (1..table.index() as u32).all(|b| table.standardized_from(b) >= table) {
            out.push(table);
        }
        return;
    };
    let c = (slot / t.cols) as u32;
    let col = slot % t.cols;
    let mut targets: Vec<u32> = (0..t.count as u32).filter(|&d| t.get(d, col ^ 1) == UNDEF).collect();
    if t.count < n {
        targets.push(t.count as u32);
    }
    for d in targets {
        let mut trail = Vec::new();
        let saved_count = t.count;
        if d as usize == t.count {
            t.count += 1;
        }
        if t.set(c, col, d, &mut trail) && propagate(t, relators, &mut trail) {
            search(t, n, relators, out);
        }
        for i in trail {
            t.table[i] = UNDEF;
        }
        t.count = saved_count;
    }
}

fn complete(t: &Partial) -> CosetTable {
    let g = t.cols / 2;
    let images = (0..g).map(|x| (0..t.count as u32).map(|c| t.get(c, 2 * x)).collect()).collect();
    CosetTable { images }
}

/// Reidemeister–Schreier presentation of the stabilizer of point 0.
///
/// Schreier generators are the non-tree edges `(c, x)` of the coset graph,
/// with a breadth-first spanning tree; relators are the rewrites of every
/// relator of `p` read from every point.
pub fn subgroup_presentation(p: &GroupPresentation, t: &CosetTable) -> Result<GroupPresentation> {
    if !t.is_valid_for(p) {
        return Err(Error::InvalidCosetTable("not a transitive action satisfying the relators".into()));
    }
    let n = t.index();
    let g = p.generator_count();
    let inv = t.inverses();
    // tree[c][x]: the edge c --x--> c·x belongs to the spanning tree
    let mut tree = vec![vec![false; g]; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for x in 0..g {
            let d = t.images[x][c] as usize;
            if !seen[d] {
                seen[d] = true;
                tree[c][x] = true;
                queue.push_back(d);
            }
            let e = inv[x][c] as usize;
            if !seen[e] {
                seen[e] = true;
                tree[e][x] = true;
                queue.push_back(e);
            }
        }
    }
    let mut id = vec![vec![u32::MAX; g]; n];
    let mut names = Vec::new();
    for c in 0..n {
        for x in 0..g {
            if !tree[c][x] {
                id[c][x] = names.len() as u32;
                names.push(format!("{}_{}", p.generators[x], c + 1));
            }
        }
    }
    let mut relators = Vec::with_capacity(n * p.relators.len());
    for c in 0..n {
        for r in &p.relators {
            let mut at = c;
            let mut w = Word::empty();
            for l in r.iter() {
                let x = l.id as usize;
                if l.inverse {
                    let e = inv[x][at] as usize;
                    if !tree[e][x] {
                        w.push(Letter::neg(id[e][x]));
                    }
                    at = e;
                } else {
                    if !tree[at][x] {
                        w.push(Letter::pos(id[at][x]));
                    }
                    at = t.images[x][at] as usize;
                }
            }
            relators.push(w);
        }
    }
    Ok(GroupPresentation::new(names, relators))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{abelianization, AbelianGroup};

    fn p(text: &str) -> GroupPresentation {
        GroupPresentation::parse(text).unwrap()
    }

    /// All permutations of `0..k`.
    fn perms(k: usize) -> Vec<Vec<u32>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for q in perms(k - 1) {
            for pos in 0..k {
                let mut r = q.clone();
                r.insert(pos, (k - 1) as u32);
                out.push(r);
            }
        }
        out
    }

    /// Subgroups of index exactly `k`, counted via transitive actions.
    fn brute_force_subgroups(p: &GroupPresentation, k: usize) -> usize {
        let all = perms(k);
        let g = p.generator_count();
        let mut count = 0usize;
        let mut idx = vec![0usize; g];
        loop {
            let images = idx.iter().map(|&i| all[i].clone()).collect();
            let t = CosetTable { images };
            if g > 0 && t.is_valid_for(p) || (g == 0 && k == 1) {
                count += 1;
            }
            let mut j = 0;
            while j < g {
                idx[j] += 1;
                if idx[j] < all.len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == g {
                break;
            }
        }
        let fact: usize = (1..k).product();
        count / fact
    }

    #[test]
    fn examples() {
        let z = p("< a | >");
        let t = low_index_subgroups(&z, 3);
        assert_eq!(t.iter().map(CosetTable::index).collect::<Vec<_>>(), vec![1, 2, 3]);

        let trefoil = p("< x, y | x^2 y^-3 >");
        assert_eq!(low_index_subgroups(&trefoil, 2).len(), 2);

        let c2 = p("< a | a^2 >");
        assert_eq!(low_index_subgroups(&c2, 2).len(), 2);
    }

    #[test]
    fn counts_match_exhaustive_enumeration() {
        let groups = [
            "< a | >",
            "< a, b | >",
            "< x, y | x^2 y^-3 >",
            "< a, b | a b a^-1 b^-1 >",
            "< a, b | a^2, b^3, a b a b >",
            "< a, b, c | a b c, c b a >",
            "< a, b, c | a^2, b^2, c^2 >",
        ];
        for text in groups {
            let g = p(text);
            let max_k = if g.generator_count() == 3 { 3 } else { 4 };
            let tables = low_index_subgroups(&g, max_k);
            for t in &tables {
                assert!(t.is_valid_for(&g), "{text}: {t}");
            }
            for k in 1..=max_k {
                let ours: usize = tables.iter().filter(|t| t.index() == k).map(CosetTable::conjugacy_class_size).sum();
                assert_eq!(ours, brute_force_subgroups(&g, k), "{text}, index {k}");
            }
        }
    }

    #[test]
    fn one_table_per_conjugacy_class() {
        // S3 = <a, b | a^2, b^3, (ab)^2> has classes of index 1, 2, 3 (three conjugate), 6
        let s3 = p("< a, b | a^2, b^3, a b a b >");
        let t = low_index_subgroups(&s3, 6);
        assert_eq!(t.iter().map(CosetTable::index).collect::<Vec<_>>(), vec![1, 2, 3, 6]);
        assert_eq!(t[2].conjugacy_class_size(), 3);
    }

    #[test]
    fn reidemeister_schreier() {
        let trefoil = p("< x, y | x^2 y^-3 >");
        let tables = low_index_subgroups(&trefoil, 2);
        let whole = subgroup_presentation(&trefoil, &tables[0]).unwrap();
        assert_eq!(abelianization(&whole), abelianization(&trefoil));
        let two = subgroup_presentation(&trefoil, &tables[1]).unwrap();
        assert_eq!(abelianization(&two), AbelianGroup::from_cyclic(1, &[3]));

        let z = p("< a | >");
        for t in low_index_subgroups(&z, 4) {
            assert_eq!(abelianization(&subgroup_presentation(&z, &t).unwrap()), AbelianGroup::free(1));
        }

        let bad = CosetTable::new(vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert!(subgroup_presentation(&trefoil, &bad).is_err());
    }

    #[test]
    fn table_checks() {
        assert!(CosetTable::new(vec![vec![0, 0]]).is_err());
        assert!(CosetTable::new(vec![vec![0, 1], vec![1]]).is_err());
        let t = CosetTable::new(vec![vec![1, 2, 0]]).unwrap();
        assert_eq!(t.to_string(), "g1: [2 3 1]");
        assert_eq!(t.standardized_from(1), t);
    }
}
