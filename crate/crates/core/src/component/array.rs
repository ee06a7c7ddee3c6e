use std::fmt;

use crate::symkernel::Expr;

/// Dense component array of fixed rank over `dim` values per index,
/// stored row-major (last index fastest).
#[derive(Clone, PartialEq)]
pub struct Array<T> {
    dim: usize,
    rank: usize,
    data: Vec<T>,
}

/// Component array of expressions, as handed to callers.
pub type Components = Array<Expr>;

impl<T> Array<T> {
    pub fn from_fn(dim: usize, rank: usize, mut f: impl FnMut(&[usize]) -> T) -> Array<T> {
        let len = dim.pow(rank as u32);
        let mut data = Vec::with_capacity(len);
        let mut idx = vec![0usize; rank];
        for _ in 0..len {
            data.push(f(&idx));
            bump(&mut idx, dim);
        }
        Array { dim, rank, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.rank, "index rank mismatch");
        idx.iter().fold(0, |acc, &i| {
            assert!(i < self.dim, "index out of range");
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &T {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: T) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    /// Every index tuple with its value, in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &T)> {
        let mut idx = vec![0usize; self.rank];
        let dim = self.dim;
        self.data.iter().map(move |v| {
            let out = idx.clone();
            bump(&mut idx, dim);
            (out, v)
        })
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Array<U> {
        Array { dim: self.dim, rank: self.rank, data: self.data.iter().map(f).collect() }
    }

    pub fn values(&self) -> &[T] {
        &self.data
    }
}

impl Array<Expr> {
    /// Nonzero components only.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &Expr)> {
        self.iter().filter(|(_, e)| !e.is_zero())
    }

    pub fn is_all_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }
}

impl<T: fmt::Debug> fmt::Debug for Array<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, v) in self.iter() {
            m.entry(&i, v);
        }
        m.finish()
    }
}

fn bump(idx: &mut [usize], dim: usize) {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < dim {
            return;
        }
        *slot = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let a = Array::from_fn(3, 2, |i| i[0] * 10 + i[1]);
        assert_eq!(*a.get(&[2, 1]), 21);
        let all: Vec<_> = a.iter().map(|(i, v)| (i, *v)).collect();
        assert_eq!(all[4], (vec![1, 1], 11));
        assert_eq!(all.len(), 9);
        let s = Array::from_fn(4, 0, |_| 7);
        assert_eq!(*s.get(&[]), 7);
    }
}
