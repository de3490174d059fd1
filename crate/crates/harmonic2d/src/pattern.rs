//! Index-symmetry patterns of the state and constitutive tensor spaces.

use crate::error::{Error, Result};
use crate::scalar::{within, Scalar};
use crate::state::Formulation;
use crate::tensor::{Permutation, Tensor};

#[derive(Clone, Debug, PartialEq)]
pub struct IndexSymmetry {
    name: &'static str,
    order: usize,
    group: Vec<Permutation>,
}

impl IndexSymmetry {
    /// Pattern invariant under the permutation group generated by `generators`
    /// (1-based slot images).
    pub fn generated(name: &'static str, order: usize, generators: &[&[usize]]) -> Self {
        let gens: Vec<Permutation> = generators
            .iter()
            .map(|g| Permutation::new(g.to_vec()).expect("generator"))
            .collect();
        let mut group = vec![Permutation::identity(order)];
        let mut frontier = group.clone();
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q = g.after(&p).expect("same arity");
                if !group.contains(&q) {
                    group.push(q.clone());
                    frontier.push(q);
                }
            }
        }
        Self { name, order, group }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn group(&self) -> &[Permutation] {
        &self.group
    }

    /// Orthogonal projection onto the symmetric subspace.
    pub fn project<T: Scalar>(&self, t: &Tensor<T>) -> Tensor<T> {
        t.average_over(&self.group)
    }

    /// `‖sym(t) − t‖ / ‖t‖`, zero for the zero tensor.
    pub fn residual<T: Scalar>(&self, t: &Tensor<T>) -> f64 {
        self.project(t).rel_diff(t)
    }

    /// Returns the symmetrized tensor if the asymmetry is within `tol`.
    pub fn validate<T: Scalar>(&self, t: &Tensor<T>, tol: f64) -> Result<Tensor<T>> {
        if t.order() != self.order {
            return Err(Error::InvalidArity(format!(
                "{} needs order {}, got {}",
                self.name,
                self.order,
                t.order()
            )));
        }
        let sym = self.project(t);
        if !within((&sym - t).norm_sq(), t.norm_sq(), tol) {
            return Err(Error::Symmetry {
                pattern: self.name.to_string(),
                residual: sym.rel_diff(t),
                tol,
            });
        }
        Ok(sym)
    }

    pub fn t2() -> Self {
        Self::generated("(ij)", 2, &[&[2, 1]])
    }

    pub fn t3(f: Formulation) -> Self {
        match f {
            Formulation::TypeII => Self::generated("(ij)k", 3, &[&[2, 1, 3]]),
            Formulation::TypeI => Self::generated("i(jk)", 3, &[&[1, 3, 2]]),
        }
    }

    pub fn ela4() -> Self {
        Self::generated(
            "(ij)(kl) with major symmetry",
            4,
            &[&[2, 1, 3, 4], &[1, 2, 4, 3], &[3, 4, 1, 2]],
        )
    }

    pub fn ela5(f: Formulation) -> Self {
        match f {
            Formulation::TypeII => {
                Self::generated("(ij)(kl)m", 5, &[&[2, 1, 3, 4, 5], &[1, 2, 4, 3, 5]])
            }
            Formulation::TypeI => {
                Self::generated("(ij)k(lm)", 5, &[&[2, 1, 3, 4, 5], &[1, 2, 3, 5, 4]])
            }
        }
    }

    pub fn ela6(f: Formulation) -> Self {
        match f {
            Formulation::TypeII => Self::generated(
                "(ij)k(lm)n with major symmetry",
                6,
                &[
                    &[2, 1, 3, 4, 5, 6],
                    &[1, 2, 3, 5, 4, 6],
                    &[4, 5, 6, 1, 2, 3],
                ],
            ),
            Formulation::TypeI => Self::generated(
                "i(jk)l(mn) with major symmetry",
                6,
                &[
                    &[1, 3, 2, 4, 5, 6],
                    &[1, 2, 3, 4, 6, 5],
                    &[4, 5, 6, 1, 2, 3],
                ],
            ),
        }
    }
}
