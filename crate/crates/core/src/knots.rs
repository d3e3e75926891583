//! Grid diagrams and the cubical complements of the knots they describe.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, GridError, Result};
use crate::lattice::{CubicalComplex, Voxel};

/// An `n × n` grid diagram: column `i` carries two markers on distinct rows,
/// and every row carries exactly two markers. Rows are numbered from 1.
///
/// The pair of a column is unordered; which marker is X and which is O
/// follows from traversing the diagram (see [`GridDiagram::markers`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    columns: Vec<[u32; 2]>,
}

impl GridDiagram {
    /// Checks the marker invariants.
    pub fn new(columns: Vec<[u32; 2]>) -> std::result::Result<Self, GridError> {
        let n = columns.len();
        if n < 2 {
            return Err(GridError::TooSmall(n));
        }
        let mut uses = vec![0usize; n + 1];
        for (i, &[a, b]) in columns.iter().enumerate() {
            for r in [a, b] {
                if r == 0 || r as usize > n {
                    return Err(GridError::RowOutOfRange { column: i + 1, row: r, size: n });
                }
            }
            if a == b {
                return Err(GridError::MarksCoincide { column: i + 1, row: a });
            }
            uses[a as usize] += 1;
            uses[b as usize] += 1;
        }
        if let Some(r) = (1..=n).find(|&r| uses[r] != 2) {
            return Err(GridError::RowUsage { row: r as u32, count: uses[r] });
        }
        Ok(GridDiagram { columns })
    }

    pub fn size(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[[u32; 2]] {
        &self.columns
    }

    /// The two columns marked in each row, indexed by row − 1.
    pub fn rows(&self) -> Vec<[usize; 2]> {
        let mut rows = vec![Vec::with_capacity(2); self.size()];
        for (i, pair) in self.columns.iter().enumerate() {
            for &r in pair {
                rows[r as usize - 1].push(i + 1);
            }
        }
        rows.into_iter().map(|v| [v[0], v[1]]).collect()
    }

    /// Swaps the roles of rows and columns.
    #[must_use]
    pub fn transpose(&self) -> GridDiagram {
        let columns = self.rows().into_iter().map(|[a, b]| [a as u32, b as u32]).collect();
        GridDiagram { columns }
    }

    /// Reverses the column order (a mirror image of the knot).
    #[must_use]
    pub fn mirror(&self) -> GridDiagram {
        GridDiagram { columns: self.columns.iter().rev().copied().collect() }
    }

    /// Number of link components.
    pub fn component_count(&self) -> usize {
        let rows = self.rows();
        let mut seen = vec![false; self.size()];
        let mut count = 0;
        for start in 0..self.size() {
            if seen[start] {
                continue;
            }
            count += 1;
            let (mut col, mut row) = (start, self.columns[start][0]);
            while !seen[col] {
                seen[col] = true;
                let [a, b] = self.columns[col];
                row = if row == a { b } else { a };
                let [c, d] = rows[row as usize - 1];
                col = if c == col + 1 { d - 1 } else { c - 1 };
            }
        }
        count
    }

    /// `(X row, O row)` per column for the orientation that starts in column 1
    /// at its first listed row; verticals run from O to X and horizontals from
    /// X to O. Every row then holds one X and one O.
    pub fn markers(&self) -> Vec<(u32, u32)> {
        let rows = self.rows();
        let mut out = vec![(0, 0); self.size()];
        let mut done = vec![false; self.size()];
        for start in 0..self.size() {
            if done[start] {
                continue;
            }
            let (mut col, mut from) = (start, self.columns[start][0]);
            while !done[col] {
                done[col] = true;
                let [a, b] = self.columns[col];
                let to = if from == a { b } else { a };
                out[col] = (to, from);
                let [c, d] = rows[to as usize - 1];
                col = if c == col + 1 { d - 1 } else { c - 1 };
                from = to;
            }
        }
        out
    }

    /// Crossings: a vertical segment passing strictly through the span of
    /// a horizontal one.
    pub fn crossing_count(&self) -> usize {
        let rows = self.rows();
        let mut count = 0;
        for (i, &[a, b]) in self.columns.iter().enumerate() {
            let (lo, hi) = (a.min(b), a.max(b));
            for r in lo + 1..hi {
                let [c, d] = rows[r as usize - 1];
                if c.min(d) < i + 1 && i + 1 < c.max(d) {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, [a, b]) in self.columns.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{a},{b}]")?;
        }
        f.write_str("]")
    }
}

/// Parses `[[a,b],[c,d],...]`; whitespace is ignored.
pub fn parse_grid(text: &str) -> std::result::Result<GridDiagram, GridError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let syntax = |m: &str| GridError::Syntax(m.to_string());
    let inner = compact
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| syntax("expected an outer [ ... ]"))?;
    let mut columns = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or_else(|| syntax("expected '[' opening a pair"))?;
        let close = body.find(']').ok_or_else(|| syntax("unclosed pair"))?;
        let nums: Vec<&str> = body[..close].split(',').collect();
        if nums.len() != 2 {
            return Err(syntax("each column needs exactly two rows"));
        }
        let parse = |s: &str| s.parse::<u32>().map_err(|_| GridError::Syntax(format!("bad row index {s:?}")));
        columns.push([parse(nums[0])?, parse(nums[1])?]);
        rest = &body[close + 1..];
        if let Some(r) = rest.strip_prefix(',') {
            if r.is_empty() {
                return Err(syntax("trailing comma"));
            }
            rest = r;
        } else if !rest.is_empty() {
            return Err(syntax("expected ',' between pairs"));
        }
    }
    GridDiagram::new(columns)
}

/// Reads `name: [[..],..]` lines; `#` starts a comment.
pub fn parse_knot_table(text: &str) -> Result<Vec<(String, GridDiagram)>> {
    let mut out: Vec<(String, GridDiagram)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, grid) = line.split_once(':').ok_or_else(|| Error::parse(i + 1, "expected `name: [[a,b],...]`"))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::parse(i + 1, "empty knot name"));
        }
        if out.iter().any(|(n, _)| n == name) {
            return Err(Error::parse(i + 1, format!("duplicate knot name {name}")));
        }
        let d = parse_grid(grid).map_err(|e| Error::parse(i + 1, e))?;
        out.push((name.to_string(), d));
    }
    Ok(out)
}

/// Prime knots with at most seven crossings.
pub fn standard_table() -> Vec<(String, GridDiagram)> {
    parse_knot_table(include_str!("../data/knots_le7.txt")).expect("bundled table parses")
}

/// A thickened knot inside a padded box, and the box minus the knot.
#[derive(Clone, Debug)]
pub struct KnotEmbedding {
    pub knot: CubicalComplex,
    pub region: CubicalComplex,
    pub complement: CubicalComplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Piece {
    Row(u32),
    Column(u32),
    Corner(u32, u32),
}

impl Piece {
    fn touches(self, other: Piece) -> bool {
        let linked = |a: Piece, b: Piece| match (a, b) {
            (Piece::Corner(_, r), Piece::Row(r2)) => r == r2,
            (Piece::Corner(c, _), Piece::Column(c2)) => c == c2,
            _ => false,
        };
        self == other || linked(self, other) || linked(other, self)
    }
}

/// Embeds the diagram with column `i` at `x = 2i`, row `j` at `y = 2j`:
/// horizontals run at `z = 0`, verticals at `z = 2`, and each marker gets a
/// connector cube at `z = 1`, so verticals pass over horizontals. The box is
/// the bounding box of the knot grown by `pad` cubes on every side.
pub fn embed_complement(d: &GridDiagram, pad: usize) -> Result<KnotEmbedding> {
    if pad < 2 {
        return Err(Error::Embedding(format!("padding {pad} is below the minimum of 2")));
    }
    if d.component_count() != 1 {
        return Err(Error::Embedding(format!("the diagram has {} components", d.component_count())));
    }
    let mut pieces: HashMap<Voxel, Piece> = HashMap::new();
    let mut put = |v: Voxel, p: Piece| -> Result<()> {
        match pieces.insert(v, p) {
            Some(q) if q != p => Err(Error::Embedding(format!("cube {v:?} claimed twice"))),
            _ => Ok(()),
        }
    };
    for (j, [a, b]) in d.rows().into_iter().enumerate() {
        let y = 2 * (j as i32 + 1);
        for x in 2 * a.min(b) as i32..=2 * a.max(b) as i32 {
            put([x, y, 0], Piece::Row(j as u32 + 1))?;
        }
    }
    for (i, &[a, b]) in d.columns().iter().enumerate() {
        let x = 2 * (i as i32 + 1);
        for y in 2 * a.min(b) as i32..=2 * a.max(b) as i32 {
            put([x, y, 2], Piece::Column(i as u32 + 1))?;
        }
        for r in [a, b] {
            put([x, 2 * r as i32, 1], Piece::Corner(i as u32 + 1, r))?;
        }
    }
    let knot = CubicalComplex::from_cubes(pieces.keys().copied());
    let (lo, hi) = knot.bounds().expect("non-empty knot");
    let p = pad as i32;
    let (blo, bhi) = (lo.map(|c| c - p), hi.map(|c| c + p));
    let mut region = CubicalComplex::with_bounds(blo, bhi);
    let mut complement = CubicalComplex::with_bounds(blo, bhi);
    for x in blo[0]..=bhi[0] {
        for y in blo[1]..=bhi[1] {
            for z in blo[2]..=bhi[2] {
                region.insert([x, y, z]);
                if !knot.contains_cube([x, y, z]) {
                    complement.insert([x, y, z]);
                }
            }
        }
    }
    let e = KnotEmbedding { knot, region, complement };
    e.check(&pieces)?;
    Ok(e)
}

const FACE_OFFSETS: [[i32; 3]; 6] = [[-1, 0, 0], [1, 0, 0], [0, -1, 0], [0, 1, 0], [0, 0, -1], [0, 0, 1]];

impl KnotEmbedding {
    fn check(&self, pieces: &HashMap<Voxel, Piece>) -> Result<()> {
        for v in self.knot.cubes() {
            let n = FACE_OFFSETS
                .iter()
                .filter(|o| self.knot.contains_cube([v[0] + o[0], v[1] + o[1], v[2] + o[2]]))
                .count();
            if n != 2 {
                return Err(Error::Embedding(format!("knot cube {v:?} has {n} face neighbours")));
            }
        }
        if self.knot.face_component_count() != 1 {
            return Err(Error::Embedding("the knot is not a single loop".into()));
        }
        if self.complement.face_component_count() != 1 {
            return Err(Error::Embedding("the complement is not face-connected".into()));
        }
        for (v, &p) in pieces {
            for w in self.knot.neighbors(*v) {
                let q = pieces[&w];
                if !p.touches(q) {
                    return Err(Error::Embedding(format!("{p:?} at {v:?} touches {q:?} at {w:?}")));
                }
            }
        }
        Ok(())
    }

    /// The complement in the `lattice` dump format.
    pub fn complement_text(&self) -> String {
        self.complement.to_text()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "[[2,5],[1,3],[2,4],[3,5],[1,4]]";

    #[test]
    fn parse_examples() {
        let u = parse_grid("[[1,2],[2,1]]").unwrap();
        assert_eq!(u.size(), 2);
        let t = parse_grid(" [ [2,5], [1,3],[2,4],[3,5],[1,4] ] ").unwrap();
        assert_eq!(t.size(), 5);
        assert_eq!(t.to_string(), TREFOIL);
        assert_eq!(parse_grid("[[1,1],[2,2]]"), Err(GridError::MarksCoincide { column: 1, row: 1 }));
    }

    #[test]
    fn parse_diagnostics() {
        assert!(matches!(parse_grid("[[1,2]"), Err(GridError::Syntax(_))));
        assert!(matches!(parse_grid("[[1,2],[2,1],]"), Err(GridError::Syntax(_))));
        assert!(matches!(parse_grid("[[1,x],[2,1]]"), Err(GridError::Syntax(_))));
        assert!(matches!(parse_grid("[[1,2,3],[2,1]]"), Err(GridError::Syntax(_))));
        assert_eq!(parse_grid("[]"), Err(GridError::TooSmall(0)));
        assert_eq!(parse_grid("[[1,2]]"), Err(GridError::TooSmall(1)));
        assert_eq!(parse_grid("[[1,3],[2,1]]"), Err(GridError::RowOutOfRange { column: 1, row: 3, size: 2 }));
        assert_eq!(parse_grid("[[1,2],[1,3],[1,2]]"), Err(GridError::RowUsage { row: 1, count: 3 }));
    }

    #[test]
    fn diagram_structure() {
        let t = parse_grid(TREFOIL).unwrap();
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.transpose().transpose(), t);
        assert_eq!(t.transpose().crossing_count(), 3);
        assert_eq!(t.mirror().crossing_count(), 3);
        let m = t.markers();
        let mut xs: Vec<u32> = m.iter().map(|p| p.0).collect();
        let mut os: Vec<u32> = m.iter().map(|p| p.1).collect();
        xs.sort_unstable();
        os.sort_unstable();
        assert_eq!(xs, vec![1, 2, 3, 4, 5]);
        assert_eq!(os, vec![1, 2, 3, 4, 5]);
        let link = parse_grid("[[1,2],[1,2],[3,4],[3,4]]").unwrap();
        assert_eq!(link.component_count(), 2);
        assert!(embed_complement(&link, 2).is_err());
    }

    #[test]
    fn knot_table() {
        let table = standard_table();
        assert_eq!(table.len(), 14);
        for (name, d) in &table {
            assert_eq!(d.component_count(), 1, "{name}");
            let c: usize = name[..1].parse().unwrap();
            assert_eq!(d.crossing_count(), c, "{name}");
        }
        assert!(parse_knot_table("a: [[1,2],[2,1]]\na: [[1,2],[2,1]]").is_err());
        assert!(parse_knot_table("just text").is_err());
        let t = parse_knot_table("# comment\n\nunknot: [[1,2],[2,1]]  # trailing\n").unwrap();
        assert_eq!(t[0].0, "unknot");
    }

    #[test]
    fn embeddings_are_loops() {
        for text in ["[[1,2],[2,1]]", TREFOIL] {
            let d = parse_grid(text).unwrap();
            for pad in [2, 3] {
                let e = embed_complement(&d, pad).unwrap();
                assert_eq!(e.knot.len() + e.complement.len(), e.region.len());
            }
            let a = embed_complement(&d, 2).unwrap();
            let b = embed_complement(&d, 3).unwrap();
            assert_eq!(a.complement.euler_characteristic(), b.complement.euler_characteristic());
        }
        assert!(embed_complement(&parse_grid(TREFOIL).unwrap(), 1).is_err());
    }

    #[test]
    fn unknot_embedding_shape() {
        let e = embed_complement(&parse_grid("[[1,2],[2,1]]").unwrap(), 2).unwrap();
        // two rows and two columns of 3 cubes each, plus four connectors
        assert_eq!(e.knot.len(), 16);
        assert_eq!(e.knot.euler_characteristic(), 0);
    }
}
