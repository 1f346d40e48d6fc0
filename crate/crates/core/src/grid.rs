//! Board geometries, neighbourhoods, the neighbour-sum operators and the
//! direct verifier.
//!
//! Multi-indices list the row first, then the column (then further axes).
//! Vectorization stacks columns: axis 0 varies fastest, so a 2-D cell
//! `(i, j)` on an `m × n` board sits at position `i + m * j`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::sparse::{band, circulant_band, SparseIntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Flat,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Neighbourhood {
    /// Cells sharing an edge or a vertex.
    Moore,
    /// Cells sharing an edge.
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Each cell equals the sum of its neighbours.
    Sum,
    /// Each cell equals the mean of its neighbours (harmonic condition).
    Average,
}

/// Geometry of a board: per-axis lengths and boundaries, the neighbourhood,
/// and which equation every cell must satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoardSpec {
    dims: Vec<usize>,
    boundary: Vec<Boundary>,
    neighbourhood: Neighbourhood,
    mode: Mode,
}

impl BoardSpec {
    pub fn new(dims: Vec<usize>, boundary: Vec<Boundary>, neighbourhood: Neighbourhood, mode: Mode) -> Result<Self> {
        if dims.is_empty() {
            return domain("a board needs at least one axis");
        }
        if dims.len() != boundary.len() {
            return domain(format!("{} dims but {} boundary flags", dims.len(), boundary.len()));
        }
        if let Some(axis) = dims.iter().position(|&d| d == 0) {
            return domain(format!("axis {axis} has length 0"));
        }
        for (axis, (&len, &b)) in dims.iter().zip(&boundary).enumerate() {
            if b == Boundary::Periodic && len < 3 {
                return domain(format!(
                    "periodic axis {axis} has length {len}; periodic axes need length >= 3"
                ));
            }
        }
        if mode == Mode::Average
            && (neighbourhood != Neighbourhood::Neumann || boundary.iter().any(|&b| b != Boundary::Periodic))
        {
            return domain("average mode requires the Neumann neighbourhood on an all-periodic board");
        }
        Ok(Self {
            dims,
            boundary,
            neighbourhood,
            mode,
        })
    }

    /// Flat board with Moore neighbourhood in sum mode (the chessboard setting).
    pub fn flat_moore(dims: Vec<usize>) -> Result<Self> {
        let boundary = vec![Boundary::Flat; dims.len()];
        Self::new(dims, boundary, Neighbourhood::Moore, Mode::Sum)
    }

    pub fn flat_neumann(dims: Vec<usize>) -> Result<Self> {
        let boundary = vec![Boundary::Flat; dims.len()];
        Self::new(dims, boundary, Neighbourhood::Neumann, Mode::Sum)
    }

    pub fn torus_moore(m: usize, n: usize) -> Result<Self> {
        Self::new(vec![m, n], vec![Boundary::Periodic; 2], Neighbourhood::Moore, Mode::Sum)
    }

    /// Neumann torus in average mode; its solutions are discrete harmonic functions.
    pub fn harmonic_torus(m: usize, n: usize) -> Result<Self> {
        Self::new(
            vec![m, n],
            vec![Boundary::Periodic; 2],
            Neighbourhood::Neumann,
            Mode::Average,
        )
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self) -> &[Boundary] {
        &self.boundary
    }

    pub fn neighbourhood(&self) -> Neighbourhood {
        self.neighbourhood
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn cell_count(&self) -> usize {
        self.dims.iter().product()
    }

    /// Same geometry with another neighbourhood and mode.
    pub fn with_neighbourhood(&self, neighbourhood: Neighbourhood, mode: Mode) -> Result<Self> {
        Self::new(self.dims.clone(), self.boundary.clone(), neighbourhood, mode)
    }

    fn check_cell(&self, cell: &[usize]) -> Result<()> {
        if cell.len() != self.dims.len() || cell.iter().zip(&self.dims).any(|(&c, &d)| c >= d) {
            return domain(format!("cell {cell:?} outside board {:?}", self.dims));
        }
        Ok(())
    }

    /// Position of `cell` in the column-stacked vector.
    pub fn vec_index(&self, cell: &[usize]) -> usize {
        let mut index = 0;
        let mut stride = 1;
        for (&c, &d) in cell.iter().zip(&self.dims) {
            index += c * stride;
            stride *= d;
        }
        index
    }

    /// Inverse of [`BoardSpec::vec_index`].
    pub fn cell_at(&self, mut index: usize) -> Vec<usize> {
        self.dims
            .iter()
            .map(|&d| {
                let c = index % d;
                index /= d;
                c
            })
            .collect()
    }

    /// Steps one coordinate by `delta`, wrapping on periodic axes.
    fn step(&self, axis: usize, coord: usize, delta: isize) -> Option<usize> {
        let len = self.dims[axis] as isize;
        let next = coord as isize + delta;
        match self.boundary[axis] {
            Boundary::Flat => (0..len).contains(&next).then_some(next as usize),
            Boundary::Periodic => Some(next.rem_euclid(len) as usize),
        }
    }
}

/// All neighbours of `cell` under the spec's neighbourhood, excluding the cell
/// itself. Order is lexicographic in the offsets `(-1, 0, 1)` per axis.
pub fn neighbors(spec: &BoardSpec, cell: &[usize]) -> Result<Vec<Vec<usize>>> {
    spec.check_cell(cell)?;
    let d = spec.ndim();
    let mut out = Vec::new();
    match spec.neighbourhood {
        Neighbourhood::Moore => {
            let total = 3usize.pow(d as u32);
            'offsets: for code in 0..total {
                let mut rest = code;
                let mut moved = false;
                let mut target = Vec::with_capacity(d);
                // axis 0 is the most significant digit so the order is lexicographic
                let mut digits = vec![0isize; d];
                for slot in digits.iter_mut().rev() {
                    *slot = (rest % 3) as isize - 1;
                    rest /= 3;
                }
                for (axis, &delta) in digits.iter().enumerate() {
                    moved |= delta != 0;
                    match spec.step(axis, cell[axis], delta) {
                        Some(c) => target.push(c),
                        None => continue 'offsets,
                    }
                }
                if moved {
                    out.push(target);
                }
            }
        }
        Neighbourhood::Neumann => {
            for axis in 0..d {
                for delta in [-1, 1] {
                    if let Some(c) = spec.step(axis, cell[axis], delta) {
                        let mut target = cell.to_vec();
                        target[axis] = c;
                        out.push(target);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The operator whose kernel is the solution space, built directly from the
/// neighbour relation: off-diagonal ones on neighbour pairs, and `-1` (sum
/// mode) or `-degree` (average mode) on the diagonal.
pub fn build_operator(spec: &BoardSpec) -> SparseIntMatrix {
    let size = spec.cell_count();
    let mut triplets = Vec::new();
    for row in 0..size {
        let cell = spec.cell_at(row);
        let nbrs = neighbors(spec, &cell).expect("cell_at yields in-range cells");
        let diag = match spec.mode {
            Mode::Sum => -1,
            Mode::Average => -(nbrs.len() as i64),
        };
        triplets.push((row, row, diag));
        triplets.extend(nbrs.iter().map(|nb| (row, spec.vec_index(nb), 1)));
    }
    SparseIntMatrix::from_triplets(size, triplets).expect("neighbour lists have no duplicates")
}

/// The same operator assembled algebraically from per-axis band matrices:
/// Kronecker products for Moore (minus `2I`), Kronecker sums for Neumann
/// (minus `3I` in sum mode, `6I` in average mode).
///
/// Because axis 0 varies fastest in the vector, the factors are multiplied
/// in reverse axis order: an `m × n` board gives `B_n ⊗ B_m`.
pub fn operator_kronecker_form(spec: &BoardSpec) -> Result<SparseIntMatrix> {
    let factors: Vec<SparseIntMatrix> = spec
        .dims
        .iter()
        .zip(&spec.boundary)
        .rev()
        .map(|(&len, &b)| match b {
            Boundary::Flat => band(len),
            Boundary::Periodic => circulant_band(len),
        })
        .collect();
    match spec.neighbourhood {
        Neighbourhood::Moore => {
            let product = factors[1..].iter().fold(factors[0].clone(), |acc, f| acc.kron(f));
            Ok(product.shift_diagonal(-2))
        }
        Neighbourhood::Neumann => {
            if spec.ndim() != 2 {
                return Err(Error::Unsupported(format!(
                    "Kronecker form for the Neumann neighbourhood is only defined in 2 dimensions, got {}",
                    spec.ndim()
                )));
            }
            let shift = match spec.mode {
                Mode::Sum => -3,
                Mode::Average => -6,
            };
            Ok(factors[0].kron_sum(&factors[1]).shift_diagonal(shift))
        }
    }
}

/// A finite board of arbitrary-precision integers, cells stored row-major
/// (last axis fastest).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntGrid {
    dims: Vec<usize>,
    cells: Vec<BigInt>,
}

impl IntGrid {
    pub fn new(dims: Vec<usize>, cells: Vec<BigInt>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return domain(format!("invalid grid dims {dims:?}"));
        }
        let expected: usize = dims.iter().product();
        if cells.len() != expected {
            return domain(format!("grid {dims:?} needs {expected} cells, got {}", cells.len()));
        }
        Ok(Self { dims, cells })
    }

    pub fn zeros(dims: Vec<usize>) -> Self {
        let n = dims.iter().product();
        Self {
            dims,
            cells: vec![BigInt::zero(); n],
        }
    }

    /// 2-D grid from rows of small integers.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return domain("ragged rows");
        }
        Self::new(vec![m, n], rows.iter().flatten().map(|&v| v.into()).collect())
    }

    /// 2-D grid with `cell(i, j) = f(i, j)`.
    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let cells = (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self {
            dims: vec![m, n],
            cells,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> &[BigInt] {
        &self.cells
    }

    fn offset(&self, cell: &[usize]) -> usize {
        cell.iter().zip(&self.dims).fold(0, |acc, (&c, &d)| acc * d + c)
    }

    pub fn get(&self, cell: &[usize]) -> &BigInt {
        &self.cells[self.offset(cell)]
    }

    pub fn set(&mut self, cell: &[usize], value: BigInt) {
        let o = self.offset(cell);
        self.cells[o] = value;
    }

    /// Rows of a 2-D grid.
    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        assert_eq!(self.dims.len(), 2, "rows() needs a 2-D grid");
        self.cells.chunks(self.dims[1]).map(<[BigInt]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        assert_eq!(self.dims.len(), 2, "transpose needs a 2-D grid");
        let (m, n) = (self.dims[0], self.dims[1]);
        Self::from_fn(n, m, |i, j| self.cells[j * n + i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            dims: self.dims.clone(),
            cells: self.cells.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return domain(format!("cannot add grids {:?} and {:?}", self.dims, other.dims));
        }
        Ok(Self {
            dims: self.dims.clone(),
            cells: self.cells.iter().zip(&other.cells).map(|(a, b)| a + b).collect(),
        })
    }

    /// Every multi-index in row-major order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let total = self.cells.len();
        (0..total).map(move |mut o| {
            let mut idx = vec![0; self.dims.len()];
            for (slot, &d) in idx.iter_mut().zip(&self.dims).rev() {
                *slot = o % d;
                o /= d;
            }
            idx
        })
    }
}

/// Column-stacked vector of the grid (axis 0 fastest).
pub fn vectorize(grid: &IntGrid) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); grid.cells.len()];
    let strides: Vec<usize> = grid
        .dims
        .iter()
        .scan(1, |s, &d| {
            let cur = *s;
            *s *= d;
            Some(cur)
        })
        .collect();
    for (idx, value) in grid.indices().zip(&grid.cells) {
        let pos: usize = idx.iter().zip(&strides).map(|(c, s)| c * s).sum();
        out[pos] = value.clone();
    }
    out
}

pub fn devectorize(v: &[BigInt], dims: &[usize]) -> Result<IntGrid> {
    let mut grid = IntGrid::new(dims.to_vec(), vec![BigInt::zero(); v.len()])?;
    let strides: Vec<usize> = dims
        .iter()
        .scan(1, |s, &d| {
            let cur = *s;
            *s *= d;
            Some(cur)
        })
        .collect();
    let indices: Vec<Vec<usize>> = grid.indices().collect();
    for (o, idx) in indices.into_iter().enumerate() {
        let pos: usize = idx.iter().zip(&strides).map(|(c, s)| c * s).sum();
        grid.cells[o] = v[pos].clone();
    }
    Ok(grid)
}

/// A cell whose equation fails. In sum mode `expected` is the neighbour sum
/// and `actual` the cell value; in average mode `actual` is the cell value
/// times its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub cell: Vec<usize>,
    pub expected: BigInt,
    pub actual: BigInt,
}

/// Checks every cell against its equation straight from the neighbour
/// relation. Independent of the operator machinery.
pub fn verify_board(grid: &IntGrid, spec: &BoardSpec) -> Result<Vec<Violation>> {
    if grid.dims() != spec.dims() {
        return domain(format!(
            "grid dims {:?} do not match spec dims {:?}",
            grid.dims(),
            spec.dims()
        ));
    }
    let mut violations = Vec::new();
    for cell in grid.indices() {
        let nbrs = neighbors(spec, &cell)?;
        let sum: BigInt = nbrs.iter().map(|nb| grid.get(nb)).sum();
        let value = grid.get(&cell).clone();
        let actual = match spec.mode() {
            Mode::Sum => value,
            Mode::Average => value * nbrs.len(),
        };
        if actual != sum {
            violations.push(Violation {
                cell,
                expected: sum,
                actual,
            });
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_has_three_moore_neighbours() {
        let spec = BoardSpec::flat_moore(vec![3, 3]).unwrap();
        assert_eq!(neighbors(&spec, &[0, 0]).unwrap().len(), 3);
        assert_eq!(neighbors(&spec, &[0, 1]).unwrap().len(), 5);
        assert_eq!(neighbors(&spec, &[1, 1]).unwrap().len(), 8);
    }

    #[test]
    fn torus_is_eight_regular() {
        let spec = BoardSpec::torus_moore(4, 6).unwrap();
        for i in 0..4 {
            for j in 0..6 {
                let nb = neighbors(&spec, &[i, j]).unwrap();
                assert_eq!(nb.len(), 8);
                let mut dedup = nb.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), 8);
            }
        }
    }

    #[test]
    fn neumann_interior_has_four() {
        let spec = BoardSpec::flat_neumann(vec![5, 5]).unwrap();
        assert_eq!(
            neighbors(&spec, &[2, 2]).unwrap(),
            vec![vec![1, 2], vec![3, 2], vec![2, 1], vec![2, 3]]
        );
    }

    #[test]
    fn out_of_range_cell_is_domain_error() {
        let spec = BoardSpec::flat_moore(vec![3, 3]).unwrap();
        assert!(matches!(neighbors(&spec, &[3, 0]), Err(Error::Domain(_))));
        assert!(neighbors(&spec, &[0]).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(BoardSpec::torus_moore(2, 5).is_err());
        assert!(BoardSpec::new(
            vec![3, 3],
            vec![Boundary::Flat; 2],
            Neighbourhood::Neumann,
            Mode::Average
        )
        .is_err());
        assert!(BoardSpec::new(
            vec![3, 3],
            vec![Boundary::Periodic; 2],
            Neighbourhood::Moore,
            Mode::Average
        )
        .is_err());
        assert!(BoardSpec::flat_moore(vec![]).is_err());
        assert!(BoardSpec::flat_moore(vec![1, 4]).is_ok());
    }

    #[test]
    fn two_by_two_operator() {
        let t = build_operator(&BoardSpec::flat_moore(vec![2, 2]).unwrap());
        let expected: Vec<Vec<i64>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { -1 } else { 1 }).collect())
            .collect();
        assert_eq!(t.to_dense(), expected);
    }

    #[test]
    fn one_by_two_operator() {
        let t = build_operator(&BoardSpec::flat_moore(vec![1, 2]).unwrap());
        assert_eq!(t.to_dense(), vec![vec![-1, 1], vec![1, -1]]);
    }

    #[test]
    fn harmonic_torus_rows() {
        let t = build_operator(&BoardSpec::harmonic_torus(3, 3).unwrap());
        for row in t.rows() {
            let ones = row.iter().filter(|&&(_, v)| v == 1).count();
            let diag: Vec<_> = row.iter().filter(|&&(_, v)| v == -4).collect();
            assert_eq!(ones, 4);
            assert_eq!(diag.len(), 1);
        }
        assert!(t.row_sums().iter().all(|&s| s == 0));
    }

    #[test]
    fn kronecker_form_five_by_five() {
        let spec = BoardSpec::flat_moore(vec![5, 5]).unwrap();
        let k = operator_kronecker_form(&spec).unwrap();
        assert_eq!(k, band(5).kron(&band(5)).shift_diagonal(-2));
        assert_eq!(k, build_operator(&spec));
    }

    #[test]
    fn kronecker_form_rejects_neumann_3d() {
        let spec = BoardSpec::flat_neumann(vec![3, 3, 3]).unwrap();
        assert!(matches!(operator_kronecker_form(&spec), Err(Error::Unsupported(_))));
    }

    #[test]
    fn column_stacking() {
        let g = IntGrid::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        let v: Vec<BigInt> = [1, 3, 2, 4].into_iter().map(BigInt::from).collect();
        assert_eq!(vectorize(&g), v);
        assert_eq!(devectorize(&v, &[2, 2]).unwrap(), g);
        assert!(devectorize(&v, &[3, 2]).is_err());
    }

    #[test]
    fn vec_index_agrees_with_vectorize() {
        let spec = BoardSpec::flat_moore(vec![2, 3, 4]).unwrap();
        let g = IntGrid::new(vec![2, 3, 4], (0..24).map(BigInt::from).collect()).unwrap();
        let v = vectorize(&g);
        for cell in g.indices() {
            assert_eq!(&v[spec.vec_index(&cell)], g.get(&cell));
            assert_eq!(spec.cell_at(spec.vec_index(&cell)), cell);
        }
    }

    #[test]
    fn all_ones_three_by_three_fails_everywhere() {
        let spec = BoardSpec::flat_moore(vec![3, 3]).unwrap();
        let g = IntGrid::from_rows(&[vec![1; 3], vec![1; 3], vec![1; 3]]).unwrap();
        let v = verify_board(&g, &spec).unwrap();
        assert_eq!(v.len(), 9);
        assert_eq!(
            v[0],
            Violation {
                cell: vec![0, 0],
                expected: 3.into(),
                actual: 1.into()
            }
        );
    }

    #[test]
    fn zero_board_always_verifies() {
        for spec in [
            BoardSpec::flat_moore(vec![4, 7]).unwrap(),
            BoardSpec::torus_moore(3, 5).unwrap(),
            BoardSpec::harmonic_torus(4, 4).unwrap(),
            BoardSpec::flat_moore(vec![3, 3, 3]).unwrap(),
        ] {
            assert!(verify_board(&IntGrid::zeros(spec.dims().to_vec()), &spec)
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn verify_rejects_dim_mismatch() {
        let spec = BoardSpec::flat_moore(vec![3, 3]).unwrap();
        assert!(verify_board(&IntGrid::zeros(vec![3, 4]), &spec).is_err());
    }
}
