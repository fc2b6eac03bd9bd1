//! Contraction of networks of sparse tensors with labelled legs.
//!
//! Every leg label occurs in at most two nodes; a label shared by two nodes is
//! summed over, labels occurring once are open. Nodes are contracted greedily,
//! always choosing the pair with the smallest estimated result.

use std::collections::HashMap;

use crate::scalar::{Field, Scalar};
use crate::tensor::SparseTensor;

pub type Leg = u32;

#[derive(Clone, Debug)]
pub struct Node {
    legs: Vec<Leg>,
    dims: Vec<usize>,
    widths: Vec<u32>,
    offsets: Vec<u32>,
    data: Vec<(u128, Scalar)>,
}

fn width(d: usize) -> u32 {
    if d <= 1 {
        0
    } else {
        usize::BITS - (d - 1).leading_zeros()
    }
}

fn layout(dims: &[usize]) -> (Vec<u32>, Vec<u32>) {
    let widths: Vec<u32> = dims.iter().map(|&d| width(d)).collect();
    let mut offsets = Vec::with_capacity(dims.len());
    let mut o = 0;
    for w in &widths {
        offsets.push(o);
        o += w;
    }
    assert!(o <= 128, "tensor with {} legs does not fit a packed key", dims.len());
    (widths, offsets)
}

impl Node {
    pub fn from_tensor(t: &SparseTensor, legs: Vec<Leg>) -> Node {
        assert_eq!(t.arity(), legs.len(), "leg count");
        let dims = t.shape.clone();
        let (widths, offsets) = layout(&dims);
        let data = t
            .iter()
            .map(|(k, v)| {
                let idx = t.unflat(k);
                let mut key = 0u128;
                for (i, &x) in idx.iter().enumerate() {
                    key |= (x as u128) << offsets[i];
                }
                (key, v.clone())
            })
            .collect();
        Node { legs, dims, widths, offsets, data }
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    fn digit(&self, key: u128, i: usize) -> u128 {
        let w = self.widths[i];
        if w == 0 {
            0
        } else {
            (key >> self.offsets[i]) & ((1u128 << w) - 1)
        }
    }

    fn pos(&self, l: Leg) -> Option<usize> {
        self.legs.iter().position(|&x| x == l)
    }

    fn nnz(&self) -> usize {
        self.data.len()
    }

    /// Converts back to a tensor with axes in the given leg order.
    pub fn into_tensor(self, order: &[Leg]) -> SparseTensor {
        assert_eq!(order.len(), self.legs.len(), "open legs {:?} vs requested {:?}", self.legs, order);
        let pos: Vec<usize> = order.iter().map(|l| self.pos(*l).expect("requested leg not open")).collect();
        let shape: Vec<usize> = pos.iter().map(|&p| self.dims[p]).collect();
        let mut out = SparseTensor::zero(shape);
        for (key, v) in &self.data {
            let idx: Vec<usize> = pos.iter().map(|&p| self.digit(*key, p) as usize).collect();
            out.add_idx(&idx, v.clone());
        }
        out
    }
}

fn contract(a: &Node, b: &Node) -> Node {
    let shared: Vec<Leg> = a.legs.iter().copied().filter(|l| b.legs.contains(l)).collect();
    let a_sh: Vec<usize> = shared.iter().map(|&l| a.pos(l).unwrap()).collect();
    let b_sh: Vec<usize> = shared.iter().map(|&l| b.pos(l).unwrap()).collect();
    let a_free: Vec<usize> = (0..a.legs.len()).filter(|i| !shared.contains(&a.legs[*i])).collect();
    let b_free: Vec<usize> = (0..b.legs.len()).filter(|i| !shared.contains(&b.legs[*i])).collect();
    let mut legs = Vec::new();
    let mut dims = Vec::new();
    for &i in &a_free {
        legs.push(a.legs[i]);
        dims.push(a.dims[i]);
    }
    for &i in &b_free {
        legs.push(b.legs[i]);
        dims.push(b.dims[i]);
    }
    let (widths, offsets) = layout(&dims);
    let shared_key = |n: &Node, pos: &[usize], key: u128| -> u128 {
        let mut k = 0u128;
        let mut o = 0;
        for &p in pos {
            k |= n.digit(key, p) << o;
            o += n.widths[p];
        }
        k
    };
    let place = |n: &Node, pos: &[usize], key: u128, base: usize| -> u128 {
        let mut k = 0u128;
        for (j, &p) in pos.iter().enumerate() {
            k |= n.digit(key, p) << offsets[base + j];
        }
        k
    };
    let mut index: HashMap<u128, Vec<(u128, &Scalar)>> = HashMap::new();
    for (key, v) in &b.data {
        index.entry(shared_key(b, &b_sh, *key)).or_default().push((place(b, &b_free, *key, a_free.len()), v));
    }
    let mut acc: HashMap<u128, Scalar> = HashMap::new();
    for (key, v) in &a.data {
        if let Some(list) = index.get(&shared_key(a, &a_sh, *key)) {
            let base = place(a, &a_free, *key, 0);
            for (bk, w) in list {
                let p = v.mul(w);
                match acc.entry(base | bk) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = e.get().add(&p);
                        *e.get_mut() = s;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                }
            }
        }
    }
    let mut data: Vec<(u128, Scalar)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    data.sort_unstable_by_key(|(k, _)| *k);
    Node { legs, dims, widths, offsets, data }
}

/// Contracts all nodes, returning a tensor over `open` in that order.
pub fn evaluate(field: Field, mut nodes: Vec<Node>, open: &[Leg]) -> SparseTensor {
    if nodes.is_empty() {
        assert!(open.is_empty());
        return SparseTensor::scalar(field.one());
    }
    let mut leg_dims: HashMap<Leg, usize> = HashMap::new();
    for n in &nodes {
        for (l, d) in n.legs.iter().zip(&n.dims) {
            leg_dims.insert(*l, *d);
        }
    }
    let zero = |leg_dims: &HashMap<Leg, usize>| SparseTensor::zero(open.iter().map(|l| leg_dims[l]).collect());
    if nodes.iter().any(|n| n.data.is_empty()) {
        return zero(&leg_dims);
    }
    while nodes.len() > 1 {
        let mut best: Option<(u8, u128, u128, usize, usize)> = None;
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                let (a, b) = (&nodes[i], &nodes[j]);
                let connected = a.legs.iter().any(|l| b.legs.contains(l));
                // connected pairs always beat outer products
                let class = if connected { 0 } else { 1 };
                if best.is_some_and(|b| b.0 < class) {
                    continue;
                }
                let mut free_size: u128 = 1;
                for (n, other) in [(a, b), (b, a)] {
                    for (k, l) in n.legs.iter().enumerate() {
                        if !other.legs.contains(l) {
                            free_size = free_size.saturating_mul(n.dims[k] as u128);
                        }
                    }
                }
                let work = (a.nnz() as u128) * (b.nnz() as u128);
                let cand = (class, free_size.min(work), work, i, j);
                if best.is_none_or(|b| (cand.0, cand.1, cand.2) < (b.0, b.1, b.2)) {
                    best = Some(cand);
                }
            }
        }
        let (_, _, _, i, j) = best.unwrap();
        let b = nodes.swap_remove(j);
        let a = nodes.swap_remove(i);
        let c = contract(&a, &b);
        if c.data.is_empty() {
            return zero(&leg_dims);
        }
        nodes.push(c);
    }
    nodes.pop().unwrap().into_tensor(open)
}
