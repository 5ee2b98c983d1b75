//! One-input, one-output ReLU networks with exact weights, and exact
//! extraction of the piecewise-linear function they compute.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::pwl::{Interval, PwlFunction};
use crate::scalar::{cmp, half, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Activation {
    Relu,
    Identity,
}

/// Affine map followed by an activation. For ReLU layers `offset` is the
/// activation floor: each unit outputs `max(v, offset)` (0 for a plain ReLU).
#[derive(Clone, Debug, PartialEq)]
pub struct Layer<T> {
    pub weights: Vec<Vec<T>>,
    pub biases: Vec<T>,
    pub activation: Activation,
    pub offset: T,
}

impl<T: Scalar> Layer<T> {
    pub fn new(weights: Vec<Vec<T>>, biases: Vec<T>, activation: Activation) -> Self {
        Self { weights, biases, activation, offset: T::zero() }
    }

    pub fn with_offset(mut self, offset: T) -> Self {
        self.offset = offset;
        self
    }

    pub fn outputs(&self) -> usize {
        self.weights.len()
    }

    pub fn inputs(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    fn affine(&self, input: &[T]) -> Vec<T> {
        self.weights
            .iter()
            .zip(&self.biases)
            .map(|(row, b)| {
                row.iter()
                    .zip(input)
                    .fold(b.clone(), |acc, (w, v)| acc + w.clone() * v.clone())
            })
            .collect()
    }

    fn activate(&self, v: T) -> T {
        match self.activation {
            Activation::Identity => v,
            Activation::Relu => {
                if v > self.offset {
                    v
                } else {
                    self.offset.clone()
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReluNetwork<T> {
    layers: Vec<Layer<T>>,
}

impl<T: Scalar> ReluNetwork<T> {
    /// Validates shapes: the first layer reads one input, consecutive layers
    /// agree on width, and the last layer is a single identity unit.
    pub fn new(layers: Vec<Layer<T>>) -> Result<Self> {
        let last = layers
            .last()
            .ok_or_else(|| Error::DimensionMismatch("network has no layers".into()))?;
        if last.activation != Activation::Identity || last.outputs() != 1 {
            return Err(Error::DimensionMismatch(
                "final layer must be a single identity unit".into(),
            ));
        }
        let mut width = 1;
        for (k, layer) in layers.iter().enumerate() {
            if layer.outputs() == 0 || layer.biases.len() != layer.outputs() {
                return Err(Error::DimensionMismatch(format!(
                    "layer {k}: {} weight rows but {} biases",
                    layer.outputs(),
                    layer.biases.len()
                )));
            }
            if layer.weights.iter().any(|row| row.len() != width) {
                return Err(Error::DimensionMismatch(format!(
                    "layer {k}: expected {width} inputs per unit"
                )));
            }
            width = layer.outputs();
        }
        Ok(Self { layers })
    }

    pub fn layers(&self) -> &[Layer<T>] {
        &self.layers
    }

    /// Number of ReLU layers.
    pub fn depth(&self) -> usize {
        self.layers.iter().filter(|l| l.activation == Activation::Relu).count()
    }

    /// Largest ReLU layer.
    pub fn width(&self) -> usize {
        self.layers
            .iter()
            .filter(|l| l.activation == Activation::Relu)
            .map(Layer::outputs)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut v = vec![x.clone()];
        for layer in &self.layers {
            v = layer.affine(&v).into_iter().map(|z| layer.activate(z)).collect();
        }
        v.pop().expect("final layer has one unit")
    }

    /// `k` copies chained end to end. The identity output layer of each copy
    /// is folded into the first layer of the next, so depth multiplies by
    /// `k` and width is unchanged.
    pub fn stack(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("stack count must be positive".into()));
        }
        let mut layers = self.layers.clone();
        for _ in 1..k {
            let out = layers.pop().expect("non-empty");
            let mut next = self.layers.clone();
            let first = &mut next[0];
            // first.W (out.W h + out.b) + first.b
            let w: Vec<Vec<T>> = first
                .weights
                .iter()
                .map(|row| {
                    (0..out.inputs())
                        .map(|c| {
                            row.iter()
                                .zip(&out.weights)
                                .fold(T::zero(), |acc, (a, orow)| acc + a.clone() * orow[c].clone())
                        })
                        .collect()
                })
                .collect();
            let b: Vec<T> = first
                .weights
                .iter()
                .zip(&first.biases)
                .map(|(row, b0)| {
                    row.iter()
                        .zip(&out.biases)
                        .fold(b0.clone(), |acc, (a, ob)| acc + a.clone() * ob.clone())
                })
                .collect();
            first.weights = w;
            first.biases = b;
            layers.extend(next);
        }
        Self::new(layers)
    }
}

/// Width-2, one-hidden-layer network computing `t(x; mu)` on `[0, 1]`:
/// hidden units `relu(x)`, `relu(x - 1/2)`; output `mu h1 - 2 mu h2`.
pub fn compile_tent<T: Scalar>(mu: T) -> Result<ReluNetwork<T>> {
    let two = T::one() + T::one();
    if mu <= T::zero() || mu > two {
        return Err(Error::InvalidArgument(format!("tent parameter {mu} outside (0, 2]")));
    }
    let hidden = Layer::new(
        vec![vec![T::one()], vec![T::one()]],
        vec![T::zero(), T::zero() - half::<T>()],
        Activation::Relu,
    );
    let output = Layer::new(
        vec![vec![mu.clone(), T::zero() - two * mu]],
        vec![T::zero()],
        Activation::Identity,
    );
    ReluNetwork::new(vec![hidden, output])
}

/// Exact function computed by `net` on `domain`.
///
/// A shared sorted grid of x-coordinates is carried through the layers
/// together with every unit's value on it; all units are affine between
/// grid points. Before each activation the exact kink location of every
/// unit (where its pre-activation meets the floor) is inserted into the grid.
pub fn extract_pwl<T: Scalar>(net: &ReluNetwork<T>, domain: &Interval<T>) -> Result<PwlFunction<T>> {
    let mut xs: Vec<T> = vec![domain.lo().clone(), domain.hi().clone()];
    if domain.is_degenerate() {
        return Err(Error::InvalidArgument("extraction domain must have positive width".into()));
    }
    // values[k][i]: unit i at grid point k
    let mut values: Vec<Vec<T>> = xs.iter().map(|x| vec![x.clone()]).collect();

    for layer in &net.layers {
        let mut pre: Vec<Vec<T>> = values.iter().map(|v| layer.affine(v)).collect();
        if layer.activation == Activation::Relu {
            let mut new_xs = Vec::with_capacity(xs.len());
            let mut new_pre = Vec::with_capacity(xs.len());
            for k in 0..xs.len() {
                new_xs.push(xs[k].clone());
                new_pre.push(pre[k].clone());
                if k + 1 == xs.len() {
                    break;
                }
                let (x0, x1) = (&xs[k], &xs[k + 1]);
                let mut kinks: Vec<T> = Vec::new();
                for i in 0..layer.outputs() {
                    let a = pre[k][i].clone() - layer.offset.clone();
                    let b = pre[k + 1][i].clone() - layer.offset.clone();
                    if (a.is_negative() && b.is_positive()) || (a.is_positive() && b.is_negative()) {
                        kinks.push(x0.clone() + (x1.clone() - x0.clone()) * a.clone() / (a - b));
                    }
                }
                kinks.sort_by(cmp);
                kinks.dedup();
                for kx in kinks {
                    let s = (kx.clone() - x0.clone()) / (x1.clone() - x0.clone());
                    let row = pre[k]
                        .iter()
                        .zip(&pre[k + 1])
                        .map(|(p0, p1)| p0.clone() + (p1.clone() - p0.clone()) * s.clone())
                        .collect();
                    new_xs.push(kx);
                    new_pre.push(row);
                }
            }
            xs = new_xs;
            pre = new_pre;
        }
        values = pre
            .into_iter()
            .map(|row| row.into_iter().map(|z| layer.activate(z)).collect())
            .collect();
    }
    let points = xs.into_iter().zip(values.into_iter().map(|mut v| v.pop().expect("one output"))).collect();
    PwlFunction::from_breakpoints(points)
}

/// `(2u)^l`, the piece bound for depth `l` and width `u`.
pub fn piece_bound(l: usize, u: usize) -> BigInt {
    num_traits::pow(BigInt::from(2 * u), l)
}
