//! Dense tensors over R^2.
//!
//! Components are stored row-major with the last index varying fastest. With
//! every index taking the values 0 or 1, the flat position of a component is
//! the binary number spelled by its index tuple, so `(i, j, k)` sits at
//! `4 i + 2 j + k`.
//!
//! Index *slots* (as used by [`Permutation`] and [`Tensor::trace_pair`]) are
//! numbered from 1, component indices from 0.

use crate::error::{Error, Result};
use crate::scalar::{within, Scalar};
use std::ops::{Add, Neg, Sub};

/// Highest tensor order handled.
pub const MAX_ORDER: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<T> {
    order: usize,
    data: Vec<T>,
}

/// Bijection of the slots `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OuterMode {
    Plain,
    /// Average of `A ⊗ B` over every permutation of its slots.
    Symmetrized,
    /// `(a ⊗̄ b)_{ijkl} = a_ik b_jl`.
    Bar,
    /// `(a ⊗̲ b)_{ijkl} = a_il b_jk`.
    Underline,
    /// Mean of `Bar` and `Underline`.
    BarUnderline,
}

#[inline]
fn bit(flat: usize, order: usize, slot: usize) -> usize {
    (flat >> (order - 1 - slot)) & 1
}

impl Permutation {
    /// Builds a permutation from its 1-based images `ς(1), …, ς(n)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &s in &images {
            if s == 0 || s > n || seen[s - 1] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[s - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Permutation whose action equals acting by `other` first, then by `self`.
    pub fn after(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::InvalidArity(format!(
                "cannot compose permutations of {} and {} slots",
                self.len(),
                other.len()
            )));
        }
        // (ς ∗ (τ ∗ T))_{i} = (τ ∗ T)_{i_ς} = T_{i_{ς(τ(·))}}
        Ok(Permutation {
            images: other.images.iter().map(|&t| self.images[t - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &s) in self.images.iter().enumerate() {
            inv[s - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Every permutation of `n` slots, identity first.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation {
                    images: prefix.clone(),
                });
                return;
            }
            for s in 1..=n {
                if !used[s - 1] {
                    used[s - 1] = true;
                    prefix.push(s);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[s - 1] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

impl<T: Scalar> Tensor<T> {
    pub fn new(order: usize, data: Vec<T>) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::InvalidArity(format!(
                "order {order} exceeds {MAX_ORDER}"
            )));
        }
        if data.len() != 1 << order {
            return Err(Error::InvalidArity(format!(
                "order {order} needs {} components, got {}",
                1 << order,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite_value()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self { order, data })
    }

    pub fn zeros(order: usize) -> Self {
        assert!(order <= MAX_ORDER, "order {order} exceeds {MAX_ORDER}");
        Self {
            order,
            data: vec![T::zero(); 1 << order],
        }
    }

    pub fn scalar(value: T) -> Self {
        Self {
            order: 0,
            data: vec![value],
        }
    }

    pub fn vector(v: [T; 2]) -> Self {
        Self {
            order: 1,
            data: v.to_vec(),
        }
    }

    pub fn matrix(m: [[T; 2]; 2]) -> Self {
        Self {
            order: 2,
            data: vec![m[0][0], m[0][1], m[1][0], m[1][1]],
        }
    }

    /// Fills every component from its index tuple (values 0 or 1).
    pub fn from_fn(order: usize, mut f: impl FnMut(&[usize]) -> T) -> Self {
        assert!(order <= MAX_ORDER, "order {order} exceeds {MAX_ORDER}");
        let mut idx = vec![0usize; order];
        let data = (0..1usize << order)
            .map(|flat| {
                for (s, slot) in idx.iter_mut().enumerate() {
                    *slot = bit(flat, order, s);
                }
                f(&idx)
            })
            .collect();
        Self { order, data }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn flat_index(idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| (acc << 1) | (i & 1))
    }

    pub fn get(&self, idx: &[usize]) -> T {
        assert_eq!(idx.len(), self.order, "index arity");
        self.data[Self::flat_index(idx)]
    }

    /// The single component of an order-0 tensor.
    pub fn value(&self) -> T {
        assert_eq!(self.order, 0, "value() on order {}", self.order);
        self.data[0]
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            order: self.order,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|x| x * s)
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: T, other: &Self) -> Self {
        self.check_same_order(other);
        Self {
            order: self.order,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + s * b)
                .collect(),
        }
    }

    fn check_same_order(&self, other: &Self) {
        assert_eq!(
            self.order, other.order,
            "order mismatch {} vs {}",
            self.order, other.order
        );
    }

    /// Full contraction with a tensor of the same order.
    pub fn dot(&self, other: &Self) -> T {
        self.check_same_order(other);
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_f64_lossy().abs())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// `‖self − other‖ ≤ tol · max(‖self‖, ‖other‖)`; exact equality when `tol == 0`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.order != other.order {
            return false;
        }
        let diff = (self - other).norm_sq();
        let a = self.norm_sq();
        let b = other.norm_sq();
        within(diff, if a > b { a } else { b }, tol)
    }

    /// `‖self − other‖ / max(‖self‖, ‖other‖)` in `f64`, zero when both vanish.
    pub fn rel_diff(&self, other: &Self) -> f64 {
        let diff = (self - other).norm_sq().to_f64_lossy().sqrt();
        let scale = self
            .norm_sq()
            .to_f64_lossy()
            .max(other.norm_sq().to_f64_lossy())
            .sqrt();
        if diff == 0.0 {
            0.0
        } else if scale == 0.0 {
            f64::INFINITY
        } else {
            diff / scale
        }
    }

    /// Pairs the last `k` indices of `self` with the first `k` of `other`, in order.
    pub fn contract(&self, other: &Self, k: usize) -> Result<Self> {
        if k > self.order || k > other.order {
            return Err(Error::InvalidArity(format!(
                "cannot contract {k} indices of orders {} and {}",
                self.order, other.order
            )));
        }
        let order = self.order + other.order - 2 * k;
        if order > MAX_ORDER {
            return Err(Error::InvalidArity(format!(
                "contraction result of order {order} exceeds {MAX_ORDER}"
            )));
        }
        // Row-major storage makes this a plain matrix product.
        let rows = 1usize << (self.order - k);
        let inner = 1usize << k;
        let cols = 1usize << (other.order - k);
        let mut data = vec![T::zero(); rows * cols];
        for r in 0..rows {
            let a_row = &self.data[r * inner..(r + 1) * inner];
            let out = &mut data[r * cols..(r + 1) * cols];
            for (s, &a) in a_row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let b_row = &other.data[s * cols..(s + 1) * cols];
                for (o, &b) in out.iter_mut().zip(b_row) {
                    *o = *o + a * b;
                }
            }
        }
        Ok(Self { order, data })
    }

    pub fn outer(&self, other: &Self, mode: OuterMode) -> Result<Self> {
        match mode {
            OuterMode::Plain => self.contract(other, 0),
            OuterMode::Symmetrized => Ok(self.contract(other, 0)?.symmetrize_all()),
            OuterMode::Bar | OuterMode::Underline | OuterMode::BarUnderline => {
                if self.order != 2 || other.order != 2 {
                    return Err(Error::InvalidArity(format!(
                        "{mode:?} product needs two order-2 tensors, got orders {} and {}",
                        self.order, other.order
                    )));
                }
                let bar = Self::from_fn(4, |x| self.get(&[x[0], x[2]]) * other.get(&[x[1], x[3]]));
                let under =
                    Self::from_fn(4, |x| self.get(&[x[0], x[3]]) * other.get(&[x[1], x[2]]));
                Ok(match mode {
                    OuterMode::Bar => bar,
                    OuterMode::Underline => under,
                    _ => (&bar + &under).scale(T::frac(1, 2)),
                })
            }
        }
    }

    /// `(ς ∗ T)_{i_1…i_n} = T_{i_{ς(1)}…i_{ς(n)}}`.
    pub fn permute(&self, p: &Permutation) -> Result<Self> {
        if p.len() != self.order {
            return Err(Error::InvalidArity(format!(
                "permutation of {} slots applied to order {}",
                p.len(),
                self.order
            )));
        }
        let n = self.order;
        let data = (0..1usize << n)
            .map(|flat| {
                let src = p
                    .images
                    .iter()
                    .fold(0, |acc, &s| (acc << 1) | bit(flat, n, s - 1));
                self.data[src]
            })
            .collect();
        Ok(Self { order: n, data })
    }

    /// Swaps the leading block of `a` indices with the trailing block of `b`:
    /// `result_{J I} = T_{I J}` with `|I| = a`, `|J| = b`.
    pub fn transpose_block(&self, a: usize, b: usize) -> Result<Self> {
        if a + b != self.order {
            return Err(Error::InvalidArity(format!(
                "blocks {a}+{b} do not split order {}",
                self.order
            )));
        }
        let images: Vec<usize> = (b + 1..=a + b).chain(1..=b).collect();
        self.permute(&Permutation { images })
    }

    /// Contraction of slots `i < j` (1-based) against the Kronecker delta.
    pub fn trace_pair(&self, i: usize, j: usize) -> Result<Self> {
        if !(1 <= i && i < j && j <= self.order) {
            return Err(Error::InvalidArgument(format!(
                "trace slots ({i}, {j}) invalid for order {}",
                self.order
            )));
        }
        let n = self.order;
        let (i, j) = (i - 1, j - 1);
        Ok(Self::from_fn(n - 2, |rest| {
            let mut full = vec![0; n];
            let mut acc = T::zero();
            for d in 0..2 {
                let mut r = rest.iter();
                for (s, slot) in full.iter_mut().enumerate() {
                    *slot = if s == i || s == j {
                        d
                    } else {
                        *r.next().unwrap()
                    };
                }
                acc = acc + self.get(&full);
            }
            acc
        }))
    }

    /// Average over every permutation of the slots.
    pub fn symmetrize_all(&self) -> Self {
        self.average_over(&Permutation::all(self.order))
    }

    /// Mean of `ς ∗ self` over the given permutations.
    pub fn average_over(&self, perms: &[Permutation]) -> Self {
        let mut acc = Self::zeros(self.order);
        for p in perms {
            acc = &acc + &self.permute(p).expect("permutation arity");
        }
        acc.scale(T::frac(1, perms.len() as i64))
    }
}

impl<T: Scalar> Add for &Tensor<T> {
    type Output = Tensor<T>;
    fn add(self, rhs: Self) -> Tensor<T> {
        self.add_scaled(T::one(), rhs)
    }
}

impl<T: Scalar> Sub for &Tensor<T> {
    type Output = Tensor<T>;
    fn sub(self, rhs: Self) -> Tensor<T> {
        self.add_scaled(-T::one(), rhs)
    }
}

impl<T: Scalar> Neg for &Tensor<T> {
    type Output = Tensor<T>;
    fn neg(self) -> Tensor<T> {
        self.map(|x| -x)
    }
}

impl<T: Scalar> Add for Tensor<T> {
    type Output = Tensor<T>;
    fn add(self, rhs: Self) -> Tensor<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Tensor<T> {
    type Output = Tensor<T>;
    fn sub(self, rhs: Self) -> Tensor<T> {
        &self - &rhs
    }
}

/// Sums a list of same-order tensors.
pub fn sum<T: Scalar>(order: usize, terms: impl IntoIterator<Item = Tensor<T>>) -> Tensor<T> {
    terms
        .into_iter()
        .fold(Tensor::zeros(order), |acc, t| &acc + &t)
}
