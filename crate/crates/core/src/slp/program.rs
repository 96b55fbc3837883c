//! Straight-line programs: division-free instruction sequences computing a
//! vector of polynomials.

use std::collections::HashMap;

use crate::algebra::field::Field;
use crate::algebra::ring::{Algebra, Scalars};
use crate::error::{Error, Result};
use crate::slp::mpoly::{MPoly, MPolyRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instruction<E> {
    Input(usize),
    Const(E),
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
    Scale(E, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slp<E> {
    n_inputs: usize,
    instructions: Vec<Instruction<E>>,
    outputs: Vec<usize>,
    declared_degrees: Vec<u32>,
}

impl<E: Clone> Slp<E> {
    pub fn new(
        n_inputs: usize,
        instructions: Vec<Instruction<E>>,
        outputs: Vec<usize>,
        declared_degrees: Vec<u32>,
    ) -> Result<Self> {
        for (k, ins) in instructions.iter().enumerate() {
            let ok = match ins {
                Instruction::Input(i) => *i < n_inputs,
                Instruction::Const(_) => true,
                Instruction::Add(i, j) | Instruction::Sub(i, j) | Instruction::Mul(i, j) => {
                    *i < k && *j < k
                }
                Instruction::Scale(_, i) => *i < k,
            };
            if !ok {
                return Err(Error::DegenerateInput(format!("instruction {k} has an invalid operand")));
            }
        }
        if outputs.iter().any(|&o| o >= instructions.len()) {
            return Err(Error::DegenerateInput("output index out of range".into()));
        }
        if declared_degrees.len() != outputs.len() {
            return Err(Error::ArityMismatch {
                expected: outputs.len(),
                found: declared_degrees.len(),
            });
        }
        Ok(Slp {
            n_inputs,
            instructions,
            outputs,
            declared_degrees,
        })
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    /// The length `L`.
    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn instructions(&self) -> &[Instruction<E>] {
        &self.instructions
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn declared_degrees(&self) -> &[u32] {
        &self.declared_degrees
    }

    pub fn max_degree(&self) -> u32 {
        self.declared_degrees.iter().copied().max().unwrap_or(0)
    }

    /// Evaluates the outputs at `point` in any ring over the coefficient
    /// field.
    pub fn eval<R: Algebra>(&self, ring: &R, point: &[R::Elem]) -> Vec<R::Elem>
    where
        R::Base: Field<Elem = E>,
    {
        assert_eq!(point.len(), self.n_inputs, "evaluation point has the wrong arity");
        let mut vals: Vec<R::Elem> = Vec::with_capacity(self.instructions.len());
        for ins in &self.instructions {
            let v = match ins {
                Instruction::Input(i) => point[*i].clone(),
                Instruction::Const(c) => ring.embed(c),
                Instruction::Add(i, j) => ring.add(&vals[*i], &vals[*j]),
                Instruction::Sub(i, j) => ring.sub(&vals[*i], &vals[*j]),
                Instruction::Mul(i, j) => ring.mul(&vals[*i], &vals[*j]),
                Instruction::Scale(c, i) => ring.scale(c, &vals[*i]),
            };
            vals.push(v);
        }
        self.outputs.iter().map(|&o| vals[o].clone()).collect()
    }

    /// Evaluation at a point of the coefficient field.
    pub fn eval_field<F: Field<Elem = E>>(&self, f: &F, point: &[E]) -> Vec<E> {
        self.eval(&Scalars(f.clone()), point)
    }

    /// Dense expansion of every output.
    pub fn expand<F: Field<Elem = E>>(&self, f: &F) -> Vec<MPoly<E>> {
        let ring = MPolyRing::new(f.clone(), self.n_inputs);
        self.eval(&ring, &ring.vars())
    }

    /// Jacobian with respect to all inputs; output `j * n + i` is
    /// `d output_j / d input_i`.
    pub fn jacobian<F: Field<Elem = E>>(&self, f: &F) -> Slp<E> {
        let all: Vec<usize> = (0..self.n_inputs).collect();
        self.jacobian_wrt(&all, f)
    }

    /// Jacobian with respect to the listed inputs, by one forward-mode pass
    /// per variable; output `j * vars.len() + i` is `d output_j / d vars[i]`.
    pub fn jacobian_wrt<F: Field<Elem = E>>(&self, vars: &[usize], f: &F) -> Slp<E> {
        self.derivative_program(vars, false, f)
    }

    /// The outputs followed by their Jacobian with respect to `vars`, sharing
    /// one instruction list.
    pub fn with_jacobian_wrt<F: Field<Elem = E>>(&self, vars: &[usize], f: &F) -> Slp<E> {
        self.derivative_program(vars, true, f)
    }

    fn derivative_program<F: Field<Elem = E>>(&self, vars: &[usize], keep_values: bool, f: &F) -> Slp<E> {
        let mut b = SlpBuilder::new(self.n_inputs);
        b.instructions = self.instructions.clone();
        let zero = b.constant(f.zero());
        let minus_one = f.neg(&f.one());
        let mut columns = Vec::with_capacity(vars.len());
        for &x in vars {
            let mut d: Vec<Deriv<E>> = Vec::with_capacity(self.instructions.len());
            for ins in &self.instructions {
                let di = match ins {
                    Instruction::Input(i) if *i == x => Deriv::Const(f.one()),
                    Instruction::Input(_) | Instruction::Const(_) => Deriv::Zero,
                    Instruction::Add(i, j) => d_add(&mut b, d[*i].clone(), d[*j].clone(), f),
                    Instruction::Sub(i, j) => {
                        let neg = d_scale(&mut b, &minus_one, d[*j].clone(), f);
                        d_add(&mut b, d[*i].clone(), neg, f)
                    }
                    Instruction::Mul(i, j) => {
                        let l = d_times(&mut b, d[*i].clone(), *j, f);
                        let r = d_times(&mut b, d[*j].clone(), *i, f);
                        d_add(&mut b, l, r, f)
                    }
                    Instruction::Scale(c, i) => d_scale(&mut b, c, d[*i].clone(), f),
                };
                d.push(di);
            }
            columns.push(
                self.outputs
                    .iter()
                    .map(|&o| match &d[o] {
                        Deriv::Zero => zero,
                        Deriv::Const(c) => b.constant(c.clone()),
                        Deriv::Node(k) => *k,
                    })
                    .collect::<Vec<_>>(),
            );
        }
        let mut outputs = Vec::with_capacity(self.outputs.len() * (vars.len() + 1));
        let mut degrees = Vec::with_capacity(outputs.capacity());
        if keep_values {
            outputs.extend_from_slice(&self.outputs);
            degrees.extend_from_slice(&self.declared_degrees);
        }
        for (j, deg) in self.declared_degrees.iter().enumerate() {
            for col in &columns {
                outputs.push(col[j]);
                degrees.push(deg.saturating_sub(1));
            }
        }
        b.finish(outputs, degrees)
    }

    /// `outer(inner(X))`.
    pub fn compose(outer: &Slp<E>, inner: &Slp<E>) -> Result<Slp<E>> {
        if outer.n_inputs != inner.n_outputs() {
            return Err(Error::ArityMismatch {
                expected: outer.n_inputs,
                found: inner.n_outputs(),
            });
        }
        let mut b = SlpBuilder::new(inner.n_inputs);
        let inputs: Vec<usize> = (0..inner.n_inputs).map(|i| b.input(i)).collect();
        let mid = b.import(inner, &inputs);
        let outs = b.import(outer, &mid);
        let inner_deg = inner.max_degree();
        let degrees = outer.declared_degrees.iter().map(|d| d * inner_deg).collect();
        Ok(b.finish(outs, degrees))
    }

    /// Keeps only the listed outputs, in the given order.
    pub fn select_outputs(&self, which: &[usize]) -> Slp<E> {
        Slp {
            n_inputs: self.n_inputs,
            instructions: self.instructions.clone(),
            outputs: which.iter().map(|&k| self.outputs[k]).collect(),
            declared_degrees: which.iter().map(|&k| self.declared_degrees[k]).collect(),
        }
    }
}

/// A derivative during forward differentiation: scalars are kept symbolic
/// so that products with them become scalings.
#[derive(Clone)]
enum Deriv<E> {
    Zero,
    Const(E),
    Node(usize),
}

fn d_node<E: Clone>(b: &mut SlpBuilder<E>, d: Deriv<E>) -> Option<usize> {
    match d {
        Deriv::Zero => None,
        Deriv::Const(c) => Some(b.constant(c)),
        Deriv::Node(k) => Some(k),
    }
}

fn d_add<F: Field>(b: &mut SlpBuilder<F::Elem>, x: Deriv<F::Elem>, y: Deriv<F::Elem>, f: &F) -> Deriv<F::Elem> {
    match (x, y) {
        (Deriv::Zero, z) | (z, Deriv::Zero) => z,
        (Deriv::Const(a), Deriv::Const(c)) => Deriv::Const(f.add(&a, &c)),
        (x, y) => {
            let (x, y) = (d_node(b, x).unwrap(), d_node(b, y).unwrap());
            Deriv::Node(b.add(x, y))
        }
    }
}

fn d_scale<F: Field>(b: &mut SlpBuilder<F::Elem>, c: &F::Elem, x: Deriv<F::Elem>, f: &F) -> Deriv<F::Elem> {
    match x {
        Deriv::Zero => Deriv::Zero,
        Deriv::Const(a) => Deriv::Const(f.mul(c, &a)),
        Deriv::Node(k) => Deriv::Node(b.scale(c.clone(), k)),
    }
}

/// `x * node`.
fn d_times<F: Field>(b: &mut SlpBuilder<F::Elem>, x: Deriv<F::Elem>, node: usize, f: &F) -> Deriv<F::Elem> {
    match x {
        Deriv::Zero => Deriv::Zero,
        Deriv::Const(a) if a == f.one() => Deriv::Node(node),
        Deriv::Const(a) => Deriv::Node(b.scale(a, node)),
        Deriv::Node(k) => Deriv::Node(b.mul(k, node)),
    }
}

/// Incremental construction of an [`Slp`].
#[derive(Clone, Debug)]
pub struct SlpBuilder<E> {
    n_inputs: usize,
    instructions: Vec<Instruction<E>>,
    input_index: HashMap<usize, usize>,
    // (opcode, a, b) -> index, so repeated subexpressions are computed once
    shared: HashMap<(u8, usize, usize), usize>,
}

impl<E: Clone> SlpBuilder<E> {
    pub fn new(n_inputs: usize) -> Self {
        SlpBuilder {
            n_inputs,
            instructions: Vec::new(),
            input_index: HashMap::new(),
            shared: HashMap::new(),
        }
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    fn push_shared(&mut self, key: (u8, usize, usize), ins: Instruction<E>) -> usize {
        if let Some(&k) = self.shared.get(&key) {
            return k;
        }
        let k = self.push(ins);
        self.shared.insert(key, k);
        k
    }

    fn push(&mut self, ins: Instruction<E>) -> usize {
        self.instructions.push(ins);
        self.instructions.len() - 1
    }

    pub fn input(&mut self, i: usize) -> usize {
        assert!(i < self.n_inputs);
        if let Some(&k) = self.input_index.get(&i) {
            return k;
        }
        let k = self.push(Instruction::Input(i));
        self.input_index.insert(i, k);
        k
    }

    pub fn constant(&mut self, c: E) -> usize {
        self.push(Instruction::Const(c))
    }

    pub fn add(&mut self, a: usize, b: usize) -> usize {
        let (x, y) = (a.min(b), a.max(b));
        self.push_shared((0, x, y), Instruction::Add(a, b))
    }

    pub fn sub(&mut self, a: usize, b: usize) -> usize {
        self.push_shared((1, a, b), Instruction::Sub(a, b))
    }

    pub fn mul(&mut self, a: usize, b: usize) -> usize {
        let (x, y) = (a.min(b), a.max(b));
        self.push_shared((2, x, y), Instruction::Mul(a, b))
    }

    pub fn scale(&mut self, c: E, a: usize) -> usize {
        self.push(Instruction::Scale(c, a))
    }

    /// `a^e` for `e >= 1` by repeated squaring.
    pub fn pow(&mut self, a: usize, e: u32) -> usize {
        assert!(e >= 1);
        if e == 1 {
            return a;
        }
        let half = self.pow(a, e / 2);
        let sq = self.mul(half, half);
        if e % 2 == 1 {
            self.mul(sq, a)
        } else {
            sq
        }
    }

    /// Appends a copy of `prog` whose inputs are the given instruction
    /// indices; returns the indices of its outputs.
    pub fn import(&mut self, prog: &Slp<E>, inputs: &[usize]) -> Vec<usize> {
        assert_eq!(inputs.len(), prog.n_inputs);
        let mut map = Vec::with_capacity(prog.instructions.len());
        for ins in &prog.instructions {
            let k = match ins {
                Instruction::Input(i) => inputs[*i],
                Instruction::Const(c) => self.constant(c.clone()),
                Instruction::Add(i, j) => self.add(map[*i], map[*j]),
                Instruction::Sub(i, j) => self.sub(map[*i], map[*j]),
                Instruction::Mul(i, j) => self.mul(map[*i], map[*j]),
                Instruction::Scale(c, i) => self.scale(c.clone(), map[*i]),
            };
            map.push(k);
        }
        prog.outputs.iter().map(|&o| map[o]).collect()
    }

    pub fn finish(self, outputs: Vec<usize>, declared_degrees: Vec<u32>) -> Slp<E> {
        Slp::new(self.n_inputs, self.instructions, outputs, declared_degrees)
            .expect("builder produces well-formed programs")
    }
}

/// `x^e` as the product of a smaller monomial with one variable, memoised in
/// `cache`; `None` for the constant monomial.
pub(crate) fn monomial<E: Clone>(b: &mut SlpBuilder<E>, cache: &mut HashMap<Vec<u32>, usize>, e: &[u32]) -> Option<usize> {
    let i = e.iter().rposition(|&k| k > 0)?;
    if let Some(&k) = cache.get(e) {
        return Some(k);
    }
    let x = b.input(i);
    let mut rest = e.to_vec();
    rest[i] -= 1;
    let k = match monomial(b, cache, &rest) {
        Some(m) => b.mul(m, x),
        None => x,
    };
    cache.insert(e.to_vec(), k);
    Some(k)
}

/// Builds a program from expanded polynomials, one monomial at a time.
pub fn slp_from_mpolys<F: Field>(polys: &[MPoly<F::Elem>], nvars: usize, f: &F) -> Slp<F::Elem> {
    let mut b = SlpBuilder::new(nvars);
    let mut outs = Vec::with_capacity(polys.len());
    let mut degrees = Vec::with_capacity(polys.len());
    let mut monos: HashMap<Vec<u32>, usize> = HashMap::new();
    for p in polys {
        let mut acc: Option<usize> = None;
        for (e, c) in p.terms() {
            let mono = monomial(&mut b, &mut monos, e);
            let term = match mono {
                Some(m) => b.scale(c.clone(), m),
                None => b.constant(c.clone()),
            };
            acc = Some(match acc {
                Some(a) => b.add(a, term),
                None => term,
            });
        }
        outs.push(acc.unwrap_or_else(|| b.constant(f.zero())));
        degrees.push(p.total_degree().unwrap_or(0));
    }
    b.finish(outs, degrees)
}

pub fn slp_eval<R: Algebra>(prog: &Slp<<R::Base as Field>::Elem>, ring: &R, point: &[R::Elem]) -> Vec<R::Elem> {
    prog.eval(ring, point)
}

pub fn slp_jacobian<F: Field>(prog: &Slp<F::Elem>, f: &F) -> Slp<F::Elem> {
    prog.jacobian(f)
}

pub fn slp_compose<E: Clone>(outer: &Slp<E>, inner: &Slp<E>) -> Result<Slp<E>> {
    Slp::compose(outer, inner)
}
