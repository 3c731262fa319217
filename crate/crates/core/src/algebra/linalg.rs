use super::field::Field;

/// Row echelon form with unit pivots, columns processed left to right.
#[derive(Clone, Debug)]
pub struct EchelonForm<F: Field> {
    field: F,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    ncols: usize,
}

/// Gaussian elimination over an exact field. Zero entries are skipped, so
/// banded inputs stay cheap.
pub fn echelon<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> EchelonForm<F> {
    let mut pivots = Vec::new();
    let mut done = 0;
    for col in 0..ncols {
        let Some(sel) = (done..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(done, sel);
        let inv = field.inv(&rows[done][col]).expect("pivot is invertible");
        for j in col..ncols {
            if !field.is_zero(&rows[done][j]) {
                rows[done][j] = field.mul(&rows[done][j], &inv);
            }
        }
        let (top, bottom) = rows.split_at_mut(done + 1);
        let prow = &top[done];
        let support: Vec<usize> = (col..ncols).filter(|&j| !field.is_zero(&prow[j])).collect();
        for row in bottom.iter_mut() {
            if field.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for &j in &support {
                row[j] = field.sub(&row[j], &field.mul(&c, &prow[j]));
            }
        }
        pivots.push(col);
        done += 1;
    }
    rows.truncate(done);
    EchelonForm {
        field: field.clone(),
        rows,
        pivots,
        ncols,
    }
}

impl<F: Field> EchelonForm<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut it = self.pivots.iter().peekable();
        (0..self.ncols)
            .filter(|c| {
                if it.peek() == Some(&c) {
                    it.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// The kernel vector with a 1 at `free`, zeros at the other free
    /// columns; its support lies in columns `<= free`.
    pub fn kernel_vector(&self, free: usize) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = vec![f.zero(); self.ncols];
        v[free] = f.one();
        for (row, &c) in self.rows.iter().zip(&self.pivots).rev() {
            if c > free {
                continue;
            }
            let mut acc = f.zero();
            for j in c + 1..=free {
                if !f.is_zero(&row[j]) && !f.is_zero(&v[j]) {
                    acc = f.add(&acc, &f.mul(&row[j], &v[j]));
                }
            }
            v[c] = f.neg(&acc);
        }
        v
    }

    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        self.free_columns()
            .into_iter()
            .map(|c| self.kernel_vector(c))
            .collect()
    }
}
