use std::fmt;

/// Dense square integer matrix, row-major.
///
/// Group elements act on column vectors of simple-root coordinates, so
/// column `j` of an element's matrix is the image of the `j`-th simple root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Box<[i64]>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n].into_boxed_slice();
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            data.extend_from_slice(row);
        }
        Self {
            n,
            data: data.into_boxed_slice(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![0i64; n * n].into_boxed_slice();
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let out = &mut data[i * n..(i + 1) * n];
                for (o, &b) in out.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        IntMatrix { n, data }
    }

    /// Conjugates by a coordinate permutation: `(P M P^-1)` where `P e_i = e_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix {
            n,
            data: vec![0; n * n].into_boxed_slice(),
        };
        for i in 0..n {
            for j in 0..n {
                out.set(perm[i], perm[j], self.get(i, j));
            }
        }
        out
    }

    /// Principal submatrix on the given index list.
    pub fn submatrix(&self, idx: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.get(i, j)).collect())
            .collect();
        IntMatrix::from_rows(&rows)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.mul(&IntMatrix::identity(2)), m);
        assert_eq!(IntMatrix::identity(2).mul(&m), m);
        assert!(IntMatrix::identity(3).is_identity());
    }

    #[test]
    fn permute_swaps_coordinates() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let p = m.permute(&[1, 0]);
        assert_eq!(p, IntMatrix::from_rows(&[vec![4, 3], vec![2, 1]]));
    }
}
