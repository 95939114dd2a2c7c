//! Latin squares, orthogonality, group-isotopy detection, and isotopisms.
//!
//! A square is tested for being isotopic to a group Cayley table by
//! normalizing it to a principal-isotope loop and checking associativity;
//! the quadrangle criterion is kept as an independent oracle.

use crate::groups::GroupTable;
use crate::partitions::{is_cartesian, Partition, PartitionSet};
use crate::perm::Perm;
use crate::{Error, Result};
use rayon::prelude::*;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    pub fn new(n: usize, cells: Vec<usize>) -> Result<LatinSquare> {
        if n == 0 || cells.len() != n * n {
            return Err(Error::NotLatin(format!(
                "expected {n}x{n} cells, got {}",
                cells.len()
            )));
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let r = cells[i * n + j];
                let c = cells[j * n + i];
                if r >= n || row_seen[r] {
                    return Err(Error::NotLatin(format!("row {i} repeats symbol {r}")));
                }
                if c >= n || col_seen[c] {
                    return Err(Error::NotLatin(format!("column {i} repeats symbol {c}")));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        Ok(LatinSquare { n, cells })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<LatinSquare> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotLatin("ragged rows".into()));
            }
            cells.extend_from_slice(row);
        }
        LatinSquare::new(n, cells)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.n + col]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| self.cells[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    /// Rows, columns and letters as partitions of the n^2 cells, cell
    /// (i, j) having index i*n + j.
    pub fn cell_partitions(&self) -> (Partition, Partition, Partition) {
        let n = self.n;
        let rows: Vec<usize> = (0..n * n).map(|c| c / n).collect();
        let cols: Vec<usize> = (0..n * n).map(|c| c % n).collect();
        (
            Partition::new(&rows).expect("nonempty"),
            Partition::new(&cols).expect("nonempty"),
            Partition::new(&self.cells).expect("nonempty"),
        )
    }
}

/// Row, column and symbol bijections applied together.
#[derive(Clone, Debug)]
pub struct Isotopism {
    pub rho: Perm,
    pub sigma: Perm,
    pub tau: Perm,
}

impl Isotopism {
    pub fn new(rho: Perm, sigma: Perm, tau: Perm) -> Result<Isotopism> {
        if rho.len() != sigma.len() || rho.len() != tau.len() {
            return Err(Error::input("isotopism components differ in size"));
        }
        Ok(Isotopism { rho, sigma, tau })
    }

    pub fn identity(n: usize) -> Isotopism {
        Isotopism {
            rho: Perm::identity(n),
            sigma: Perm::identity(n),
            tau: Perm::identity(n),
        }
    }
}

/// Applies an isotopism: cell (i, j) moves to (rho(i), sigma(j)) and its
/// symbol becomes tau of the old symbol.
pub fn apply_isotopism(l: &LatinSquare, iso: &Isotopism) -> Result<LatinSquare> {
    let n = l.order();
    if iso.rho.len() != n {
        return Err(Error::input("isotopism order mismatch"));
    }
    let mut cells = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            cells[iso.rho.apply(i) * n + iso.sigma.apply(j)] = iso.tau.apply(l.get(i, j));
        }
    }
    LatinSquare::new(n, cells)
}

/// Whether the n^2 ordered symbol pairs of two squares are all distinct.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> bool {
    let n = a.order();
    if b.order() != n {
        return false;
    }
    let mut seen = vec![false; n * n];
    for (x, y) in a.cells().iter().zip(b.cells()) {
        let idx = x * n + y;
        if seen[idx] {
            return false;
        }
        seen[idx] = true;
    }
    true
}

/// A list of pairwise orthogonal Latin squares of a common order.
#[derive(Clone, Debug)]
pub struct MolsSet {
    n: usize,
    squares: Vec<LatinSquare>,
}

impl MolsSet {
    pub fn new(squares: Vec<LatinSquare>) -> Result<MolsSet> {
        let Some(first) = squares.first() else {
            return Err(Error::input("empty square list"));
        };
        let n = first.order();
        for (i, s) in squares.iter().enumerate() {
            if s.order() != n {
                return Err(Error::input(format!("square {i} has a different order")));
            }
        }
        for i in 0..squares.len() {
            for j in i + 1..squares.len() {
                if !are_orthogonal(&squares[i], &squares[j]) {
                    return Err(Error::input(format!(
                        "squares {i} and {j} are not orthogonal"
                    )));
                }
            }
        }
        Ok(MolsSet { n, squares })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    /// Rows, columns, then one letter partition per square, all over the
    /// n^2 cells.
    pub fn partitions(&self) -> PartitionSet {
        let (rows, cols, _) = self.squares[0].cell_partitions();
        let mut members = vec![rows, cols];
        for s in &self.squares {
            members.push(Partition::new(s.cells()).expect("nonempty"));
        }
        let mut ps = PartitionSet::new(members).expect("consistent sizes");
        ps.meta = Some(format!("mols, order {}, {} squares", self.n, self.squares.len()));
        ps
    }
}

/// Reads a Latin square off three partitions taken as rows, columns and
/// letters.
pub fn from_partitions(
    rows: &Partition,
    cols: &Partition,
    letters: &Partition,
) -> Result<LatinSquare> {
    let size = rows.size();
    if cols.size() != size || letters.size() != size {
        return Err(Error::NotAGrid("partition sizes differ".into()));
    }
    if !is_cartesian([rows, cols]) {
        return Err(Error::NotAGrid(
            "rows and columns do not form a grid".into(),
        ));
    }
    let n = rows.part_count();
    if cols.part_count() != n {
        return Err(Error::NotAGrid("grid is not square".into()));
    }
    if letters.part_count() != n {
        return Err(Error::NotLatin(format!(
            "expected {n} letters, found {}",
            letters.part_count()
        )));
    }
    let mut cells = vec![usize::MAX; n * n];
    for point in 0..size {
        let idx = rows.label(point) * n + cols.label(point);
        debug_assert_eq!(cells[idx], usize::MAX, "grid pair repeated");
        cells[idx] = letters.label(point);
    }
    LatinSquare::new(n, cells)
}

/// Normalizes to a principal-isotope loop: reorder columns so row 0
/// becomes the identity, then rows so column 0 becomes the identity.  If
/// the loop is associative it is a group and the square is isotopic to
/// its Cayley table; by Albert's theorem the outcome does not depend on
/// the normalization chosen.
pub fn is_group_isotopic(l: &LatinSquare) -> Option<GroupTable> {
    let n = l.order();
    let mut step1 = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            step1[i * n + l.get(0, j)] = l.get(i, j);
        }
    }
    let mut step2 = vec![0; n * n];
    for i in 0..n {
        let target = step1[i * n];
        for j in 0..n {
            step2[target * n + j] = step1[i * n + j];
        }
    }
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|i| step2[i * n..(i + 1) * n].to_vec())
        .collect();
    GroupTable::from_rows(&rows).ok()
}

/// Frolov's quadrangle criterion.  For each ordered row pair (x1, x2)
/// the column map psi sends y to the column of row x2 holding the symbol
/// L(x1, y); the criterion holds when, for every third row, the induced
/// row correspondence is the same at every column.
pub fn quadrangle_criterion(l: &LatinSquare) -> bool {
    let n = l.order();
    // col_inv[c][v] = row holding symbol v in column c
    let mut col_inv = vec![vec![0; n]; n];
    let mut row_inv = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = l.get(i, j);
            col_inv[j][v] = i;
            row_inv[i][v] = j;
        }
    }
    for x1 in 0..n {
        for x2 in 0..n {
            if x1 == x2 {
                continue;
            }
            let psi: Vec<usize> = (0..n).map(|y| row_inv[x2][l.get(x1, y)]).collect();
            for x3 in 0..n {
                let expected = col_inv[psi[0]][l.get(x3, 0)];
                for (y, &py) in psi.iter().enumerate().skip(1) {
                    if col_inv[py][l.get(x3, y)] != expected {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Group identity of each 3-subset of a partition set: the first two
/// members of a subset act as rows and columns, the third as letters.
/// `None` marks a square that is not isotopic to any group table.
pub type ProfileEntry = ([usize; 3], Option<crate::groups::GroupName>);

pub fn group_profile(ps: &PartitionSet) -> Result<Vec<ProfileEntry>> {
    let k = ps.len();
    if k < 3 {
        return Err(Error::input("profile needs at least three partitions"));
    }
    let mut triples = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for t in j + 1..k {
                triples.push([i, j, t]);
            }
        }
    }
    triples
        .par_iter()
        .map(|&[i, j, t]| {
            let members = ps.members();
            let square = from_partitions(&members[i], &members[j], &members[t])?;
            let name = match is_group_isotopic(&square) {
                Some(table) => Some(crate::groups::identify_group(&table)?),
                None => None,
            };
            Ok(([i, j, t], name))
        })
        .collect()
}

/// All reduced Latin squares of the given order: row 0 and column 0 are
/// both the identity permutation.  Backtracking enumeration, intended
/// for small orders.
pub fn reduced_squares(n: usize) -> Vec<LatinSquare> {
    let mut cells = vec![usize::MAX; n * n];
    for j in 0..n {
        cells[j] = j;
        cells[j * n] = j;
    }
    let mut out = Vec::new();
    fill_reduced(n, &mut cells, 1, 1, &mut out);
    out
}

fn fill_reduced(n: usize, cells: &mut Vec<usize>, row: usize, col: usize, out: &mut Vec<LatinSquare>) {
    if row == n {
        out.push(LatinSquare::new(n, cells.clone()).expect("construction preserves the property"));
        return;
    }
    let (next_row, next_col) = if col + 1 == n {
        (row + 1, 1)
    } else {
        (row, col + 1)
    };
    'symbols: for s in 0..n {
        for j in 0..col {
            if cells[row * n + j] == s {
                continue 'symbols;
            }
        }
        for i in 0..row {
            if cells[i * n + col] == s {
                continue 'symbols;
            }
        }
        cells[row * n + col] = s;
        fill_reduced(n, cells, next_row, next_col, out);
        cells[row * n + col] = usize::MAX;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_table, AbelianSpec};

    fn cyclic_square(n: usize) -> LatinSquare {
        let cells: Vec<usize> = (0..n * n).map(|c| (c / n + c % n) % n).collect();
        LatinSquare::new(n, cells).unwrap()
    }

    #[test]
    fn validation_rejects_bad_squares() {
        assert!(LatinSquare::new(2, vec![0, 1, 0, 1]).is_err());
        assert!(LatinSquare::new(2, vec![0, 1, 1, 2]).is_err());
        assert!(LatinSquare::new(2, vec![0, 1, 1, 0]).is_ok());
    }

    #[test]
    fn orthogonality_examples() {
        let a = cyclic_square(5);
        // L'(x, y) = x + 2y
        let b = LatinSquare::new(5, (0..25).map(|c| (c / 5 + 2 * (c % 5)) % 5).collect()).unwrap();
        assert!(are_orthogonal(&a, &b));
        assert!(!are_orthogonal(&a, &a));
        assert!(are_orthogonal(&b, &a));
    }

    #[test]
    fn mols_set_rejects_non_orthogonal_pairs() {
        let a = cyclic_square(4);
        assert!(MolsSet::new(vec![a.clone(), a]).is_err());
    }

    #[test]
    fn from_partitions_round_trip() {
        let l = cyclic_square(3);
        let (rows, cols, letters) = l.cell_partitions();
        let back = from_partitions(&rows, &cols, &letters).unwrap();
        assert_eq!(back, l);
        // swapping roles still yields a Latin square (a conjugate)
        let conj = from_partitions(&rows, &letters, &cols).unwrap();
        assert_eq!(conj.order(), 3);
    }

    #[test]
    fn from_partitions_rejects_non_grids() {
        let l = cyclic_square(3);
        let (rows, _, letters) = l.cell_partitions();
        assert!(matches!(
            from_partitions(&rows, &rows, &letters),
            Err(Error::NotAGrid(_))
        ));
    }

    #[test]
    fn cayley_tables_are_group_isotopic() {
        for n in 2..6 {
            let table = is_group_isotopic(&cyclic_square(n)).unwrap();
            assert_eq!(table.order(), n);
            assert!(quadrangle_criterion(&cyclic_square(n)));
        }
    }

    #[test]
    fn isotopy_class_is_stable_under_isotopisms() {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let l = cyclic_square(5);
        for _ in 0..20 {
            let mut shuffled: Vec<Vec<usize>> = (0..3)
                .map(|_| {
                    let mut v: Vec<usize> = (0..5).collect();
                    v.shuffle(&mut rng);
                    v
                })
                .collect();
            let iso = Isotopism::new(
                Perm::new(shuffled.remove(0)).unwrap(),
                Perm::new(shuffled.remove(0)).unwrap(),
                Perm::new(shuffled.remove(0)).unwrap(),
            )
            .unwrap();
            let moved = apply_isotopism(&l, &iso).unwrap();
            let table = is_group_isotopic(&moved).expect("still a group");
            let name = crate::groups::identify_group(&table).unwrap();
            assert_eq!(name.as_str(), "C5");
            assert!(quadrangle_criterion(&moved));
        }
    }

    #[test]
    fn identity_isotopism_is_a_no_op() {
        let l = cyclic_square(4);
        assert_eq!(apply_isotopism(&l, &Isotopism::identity(4)).unwrap(), l);
    }

    #[test]
    fn reduced_square_counts_match_the_classical_sequence() {
        assert_eq!(reduced_squares(1).len(), 1);
        assert_eq!(reduced_squares(2).len(), 1);
        assert_eq!(reduced_squares(3).len(), 1);
        assert_eq!(reduced_squares(4).len(), 4);
        assert_eq!(reduced_squares(5).len(), 56);
    }

    #[test]
    fn order_four_squares_are_all_group_isotopic() {
        for l in reduced_squares(4) {
            assert!(is_group_isotopic(&l).is_some());
            assert!(quadrangle_criterion(&l));
        }
    }

    #[test]
    fn some_order_five_square_is_not_a_group() {
        let mut non_group = 0;
        for l in reduced_squares(5) {
            let by_loop = is_group_isotopic(&l).is_some();
            let by_quadrangle = quadrangle_criterion(&l);
            assert_eq!(by_loop, by_quadrangle, "oracles disagree on {:?}", l);
            if !by_loop {
                non_group += 1;
            }
        }
        assert!(non_group > 0);
    }

    #[test]
    fn profile_of_cyclic_table_is_c3() {
        let l = cyclic_square(3);
        let ms = MolsSet::new(vec![l]).unwrap();
        let profile = group_profile(&ms.partitions()).unwrap();
        assert_eq!(profile.len(), 1);
        let (triple, name) = &profile[0];
        assert_eq!(*triple, [0, 1, 2]);
        assert_eq!(name.as_ref().unwrap().as_str(), "C3");
    }

    #[test]
    fn semilattice_partitions_give_back_the_cayley_table() {
        let g = build_table(&AbelianSpec::new(vec![2]).unwrap()).unwrap();
        let ps = crate::partitions::diagonal_semilattice(&g, 2, 100).unwrap();
        let members = ps.members();
        let square = from_partitions(&members[0], &members[1], &members[2]).unwrap();
        let table = is_group_isotopic(&square).unwrap();
        let name = crate::groups::identify_group(&table).unwrap();
        assert_eq!(name.as_str(), "C2");
    }
}
