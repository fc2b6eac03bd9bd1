//! A small language for Sweedler-style formulas, compiled to tensor networks.
//!
//! An expression is a list of words separated by `|`, one per tensor factor of
//! the result. A word is a product of factors, read left to right:
//!
//! * `X2`: leg 2 of the bound tensor `X`; every occurrence of `X` refers to
//!   the same summation, so `X1 … X2 … X3` spells out `X¹ … X² … X³`.
//! * `X2_12`: a Sweedler leg. Apply Δ to `X2`, take the first factor, apply Δ
//!   again and take the second (`(X²)_(1,2)`). `h_1`, `h_2` do the same for a
//!   variable. All siblings must be used.
//! * `a.7`: the 7th factor of an iterated coproduct (coassociative spaces).
//! * `alpha`: a bound one-leg tensor; each bare occurrence is a fresh copy.
//! * `S(w)`: a bound linear map applied to a word.
//! * `phi(w1, w2, w3)`: a bound multilinear form; contributes a scalar.
//! * `chi(w)`: a functional variable whose argument becomes an open index.
//! * integers are scalar factors; a word with no element factors is the unit.
//!
//! The result tensor has the declared variables' indices first (in the order
//! passed to [`Ctx::eval`]) followed by one index per output word.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::net::{self, Leg, Node};
use crate::scalar::Field;
use crate::tensor::SparseTensor;

pub type SpaceId = usize;

#[derive(Clone)]
pub struct Space<'a> {
    pub dim: usize,
    pub mult: Option<&'a SparseTensor>,
    pub unit: Option<&'a SparseTensor>,
    pub comult: Option<&'a SparseTensor>,
}

#[derive(Clone)]
enum Binding<'a> {
    Tensor(&'a SparseTensor, Vec<SpaceId>),
    Form(&'a SparseTensor, Vec<SpaceId>),
    Map(&'a SparseTensor, SpaceId, SpaceId),
    Var(SpaceId),
    FunVar(Vec<SpaceId>),
}

#[derive(Clone)]
pub struct Ctx<'a> {
    pub field: Field,
    spaces: Vec<Space<'a>>,
    binds: HashMap<String, Binding<'a>>,
}

impl<'a> Ctx<'a> {
    pub fn new(field: Field) -> Self {
        Ctx { field, spaces: Vec::new(), binds: HashMap::new() }
    }

    pub fn space(&mut self, s: Space<'a>) -> SpaceId {
        self.spaces.push(s);
        self.spaces.len() - 1
    }

    pub fn dim(&self, s: SpaceId) -> usize {
        self.spaces[s].dim
    }

    fn bind(&mut self, name: &str, b: Binding<'a>) -> &mut Self {
        assert!(name.bytes().all(|c| c.is_ascii_alphabetic()), "binding name {name:?}");
        self.binds.insert(name.to_string(), b);
        self
    }

    /// A tensor whose legs live in `spaces` (one-leg tensors are constants).
    pub fn tensor(&mut self, name: &str, t: &'a SparseTensor, spaces: &[SpaceId]) -> &mut Self {
        assert_eq!(t.arity(), spaces.len(), "{name}");
        self.bind(name, Binding::Tensor(t, spaces.to_vec()))
    }

    /// Same tensor bound under several names (independent summations).
    pub fn tensors(&mut self, names: &[&str], t: &'a SparseTensor, spaces: &[SpaceId]) -> &mut Self {
        for n in names {
            self.tensor(n, t, spaces);
        }
        self
    }

    pub fn form(&mut self, name: &str, t: &'a SparseTensor, spaces: &[SpaceId]) -> &mut Self {
        assert_eq!(t.arity(), spaces.len(), "{name}");
        self.bind(name, Binding::Form(t, spaces.to_vec()))
    }

    /// A linear map given as a tensor `[src, dst]` (`t[i][j]` = coefficient of
    /// `e_j` in the image of `e_i`).
    pub fn map(&mut self, name: &str, t: &'a SparseTensor, src: SpaceId, dst: SpaceId) -> &mut Self {
        assert_eq!(t.shape, vec![self.dim(src), self.dim(dst)], "{name}");
        self.bind(name, Binding::Map(t, src, dst))
    }

    pub fn var(&mut self, name: &str, space: SpaceId) -> &mut Self {
        self.bind(name, Binding::Var(space))
    }

    pub fn funvar(&mut self, name: &str, spaces: &[SpaceId]) -> &mut Self {
        self.bind(name, Binding::FunVar(spaces.to_vec()))
    }

    /// Evaluates an element-valued expression.
    pub fn eval(&self, vars: &[&str], expr: &str) -> Result<SparseTensor> {
        let (defs, words) = parse(expr)?;
        self.build(vars, &defs, &words, false, expr)
    }

    /// Evaluates a scalar-valued expression (a single word without element factors).
    pub fn eval_scalar(&self, vars: &[&str], expr: &str) -> Result<SparseTensor> {
        let (defs, words) = parse(expr)?;
        if words.len() != 1 {
            return Err(Error::Invalid(format!("scalar expression with {} words: {expr}", words.len())));
        }
        self.build(vars, &defs, &words, true, expr)
    }

    fn build(&self, vars: &[&str], defs: &Defs, words: &[Word], scalar: bool, src: &str) -> Result<SparseTensor> {
        let mut b = Builder { ctx: self, nodes: Vec::new(), next: 0, trees: HashMap::new(), flat_sizes: HashMap::new(), open: HashSet::new(), funvar_legs: HashMap::new(), vars, dims: HashMap::new(), defs: HashSet::new() };
        for w in words.iter().chain(defs.iter().map(|(_, w)| w)) {
            b.scan(w)?;
        }
        for (name, w) in defs {
            if self.binds.contains_key(name) || b.defs.contains(name) {
                return Err(Error::Invalid(format!("{name} is already bound")));
            }
            let (leg, space) = b.word(w, Some(0), true)?.unwrap();
            b.defs.insert(name.clone());
            b.trees.insert(name.clone(), vec![LegTree { space, nodes: vec![TNode { leg, state: TState::Free }] }]);
        }
        let mut outs = Vec::new();
        if scalar {
            let leg = b.word(&words[0], None, false)?;
            if leg.is_some() {
                return Err(Error::Invalid(format!("scalar expression has element factors: {src}")));
            }
        } else {
            for w in words {
                let (leg, _) = b.word(w, Some(0), true)?.unwrap();
                outs.push(b.make_open(leg));
            }
        }
        let mut open = Vec::new();
        for v in vars {
            match self.binds.get(*v) {
                Some(Binding::Var(_)) => {
                    let t = b.trees.get(*v).ok_or_else(|| Error::Invalid(format!("variable {v} unused in {src}")))?;
                    open.push(t[0].nodes[0].leg);
                }
                Some(Binding::FunVar(_)) => {
                    let l = b.funvar_legs.get(*v).ok_or_else(|| Error::Invalid(format!("variable {v} unused in {src}")))?;
                    open.extend(l.iter().copied());
                }
                _ => return Err(Error::Invalid(format!("{v} is not a variable"))),
            }
        }
        for (name, tree) in &b.trees {
            for (k, t) in tree.iter().enumerate() {
                if t.nodes.iter().any(|n| matches!(n.state, TState::Free)) {
                    return Err(Error::Invalid(format!("leg {} of {name} unused in {src}", k + 1)));
                }
            }
        }
        open.extend(outs);
        Ok(net::evaluate(self.field, b.nodes, &open))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Path {
    None,
    Tree(Vec<u8>),
    Flat(usize),
}

#[derive(Clone, Debug)]
enum Factor {
    Num(i64),
    Atom { name: String, leg: Option<usize>, path: Path },
    Call { name: String, args: Vec<Word> },
}

type Word = Vec<Factor>;

type Defs = Vec<(String, Word)>;

fn parse(s: &str) -> Result<(Defs, Vec<Word>)> {
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0;
    let mut defs = Vec::new();
    loop {
        // `name = word;` definitions precede the main expression
        let save = pos;
        skip_ws(&chars, &mut pos);
        let start = pos;
        while pos < chars.len() && chars[pos].is_ascii_alphabetic() {
            pos += 1;
        }
        let name: String = chars[start..pos].iter().collect();
        skip_ws(&chars, &mut pos);
        if !name.is_empty() && pos < chars.len() && chars[pos] == '=' {
            pos += 1;
            let w = parse_word(&chars, &mut pos)?;
            skip_ws(&chars, &mut pos);
            if pos >= chars.len() || chars[pos] != ';' {
                return Err(Error::Invalid(format!("definition of {name} must end with ';'")));
            }
            pos += 1;
            defs.push((name, w));
        } else {
            pos = save;
            break;
        }
    }
    let words = parse_words(&chars, &mut pos, '|')?;
    if pos != chars.len() {
        return Err(Error::Invalid(format!("unexpected '{}' at {pos} in {s}", chars[pos])));
    }
    Ok((defs, words))
}

fn skip_ws(c: &[char], pos: &mut usize) {
    while *pos < c.len() && c[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_words(c: &[char], pos: &mut usize, sep: char) -> Result<Vec<Word>> {
    let mut words = vec![parse_word(c, pos)?];
    loop {
        skip_ws(c, pos);
        if *pos < c.len() && c[*pos] == sep {
            *pos += 1;
            words.push(parse_word(c, pos)?);
        } else {
            return Ok(words);
        }
    }
}

fn digits(c: &[char], pos: &mut usize) -> String {
    let start = *pos;
    while *pos < c.len() && c[*pos].is_ascii_digit() {
        *pos += 1;
    }
    c[start..*pos].iter().collect()
}

fn parse_word(c: &[char], pos: &mut usize) -> Result<Word> {
    let mut w = Vec::new();
    loop {
        skip_ws(c, pos);
        if *pos >= c.len() {
            return Ok(w);
        }
        let ch = c[*pos];
        if ch.is_ascii_digit() || ch == '-' {
            let neg = ch == '-';
            if neg {
                *pos += 1;
            }
            let d = digits(c, pos);
            let v: i64 = d.parse().map_err(|_| Error::Invalid("bad number".into()))?;
            w.push(Factor::Num(if neg { -v } else { v }));
        } else if ch.is_ascii_alphabetic() {
            let start = *pos;
            while *pos < c.len() && c[*pos].is_ascii_alphabetic() {
                *pos += 1;
            }
            let name: String = c[start..*pos].iter().collect();
            if *pos < c.len() && c[*pos] == '(' {
                *pos += 1;
                let args = parse_words(c, pos, ',')?;
                skip_ws(c, pos);
                if *pos >= c.len() || c[*pos] != ')' {
                    return Err(Error::Invalid(format!("missing ')' after {name}(")));
                }
                *pos += 1;
                w.push(Factor::Call { name, args });
                continue;
            }
            let leg = digits(c, pos);
            let leg = if leg.is_empty() { None } else { Some(leg.parse::<usize>().unwrap()) };
            let mut path = Path::None;
            if *pos < c.len() && (c[*pos] == '_' || c[*pos] == '.') {
                let flat = c[*pos] == '.';
                *pos += 1;
                let d = digits(c, pos);
                if d.is_empty() {
                    return Err(Error::Invalid(format!("empty Sweedler index on {name}")));
                }
                path = if flat {
                    Path::Flat(d.parse().unwrap())
                } else {
                    let p: Vec<u8> = d.bytes().map(|b| b - b'0').collect();
                    if p.iter().any(|&x| x != 1 && x != 2) {
                        return Err(Error::Invalid(format!("Sweedler path {d} on {name}")));
                    }
                    Path::Tree(p)
                };
            }
            w.push(Factor::Atom { name, leg, path });
        } else {
            return Ok(w);
        }
    }
}

#[derive(Debug)]
enum TState {
    Free,
    Used,
    Split(usize, usize),
    Flat(Vec<usize>),
}

#[derive(Debug)]
struct TNode {
    leg: Leg,
    state: TState,
}

#[derive(Debug)]
struct LegTree {
    space: SpaceId,
    nodes: Vec<TNode>,
}

struct Builder<'c, 'a> {
    ctx: &'c Ctx<'a>,
    nodes: Vec<Node>,
    next: Leg,
    trees: HashMap<String, Vec<LegTree>>,
    flat_sizes: HashMap<(String, usize), usize>,
    open: HashSet<Leg>,
    funvar_legs: HashMap<String, Vec<Leg>>,
    vars: &'c [&'c str],
    dims: HashMap<Leg, usize>,
    defs: HashSet<String>,
}

impl<'c, 'a> Builder<'c, 'a> {
    fn fresh(&mut self) -> Leg {
        self.next += 1;
        self.next - 1
    }

    fn space(&self, s: SpaceId) -> &Space<'a> {
        &self.ctx.spaces[s]
    }

    fn push(&mut self, t: &SparseTensor, legs: Vec<Leg>) {
        for (l, d) in legs.iter().zip(&t.shape) {
            self.dims.insert(*l, *d);
        }
        self.nodes.push(Node::from_tensor(t, legs));
    }

    fn scan(&mut self, w: &Word) -> Result<()> {
        for f in w {
            match f {
                Factor::Atom { name, leg, path: Path::Flat(k) } => {
                    let e = self.flat_sizes.entry((name.clone(), leg.unwrap_or(1))).or_insert(0);
                    *e = (*e).max(*k);
                }
                Factor::Call { args, .. } => {
                    for a in args {
                        self.scan(a)?;
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn make_open(&mut self, leg: Leg) -> Leg {
        let leg = if self.open.contains(&leg) {
            // the same index cannot be open twice; route it through an identity
            let out = self.fresh();
            let d = self.leg_dim(leg);
            let mut id = SparseTensor::zero(vec![d, d]);
            for i in 0..d {
                id.add_idx(&[i, i], self.ctx.field.one());
            }
            self.push(&id, vec![leg, out]);
            out
        } else {
            leg
        };
        self.open.insert(leg);
        leg
    }

    fn leg_dim(&self, leg: Leg) -> usize {
        self.dims[&leg]
    }

    fn instance(&mut self, name: &str) -> Result<()> {
        if self.trees.contains_key(name) {
            return Ok(());
        }
        let b = self.ctx.binds.get(name).ok_or_else(|| Error::Invalid(format!("unbound name {name}")))?.clone();
        match b {
            Binding::Tensor(t, spaces) => {
                let legs: Vec<Leg> = spaces.iter().map(|_| self.fresh()).collect();
                self.push(t, legs.clone());
                let trees = legs.iter().zip(&spaces).map(|(&l, &s)| LegTree { space: s, nodes: vec![TNode { leg: l, state: TState::Free }] }).collect();
                self.trees.insert(name.to_string(), trees);
            }
            Binding::Var(s) => {
                if !self.vars.contains(&name) {
                    return Err(Error::Invalid(format!("variable {name} not requested")));
                }
                let l = self.fresh();
                self.open.insert(l);
                self.dims.insert(l, self.ctx.dim(s));
                self.trees.insert(name.to_string(), vec![LegTree { space: s, nodes: vec![TNode { leg: l, state: TState::Free }] }]);
            }
            _ => return Err(Error::Invalid(format!("{name} is not a tensor"))),
        }
        Ok(())
    }

    fn split(&mut self, space: SpaceId, parent: Leg) -> Result<(Leg, Leg)> {
        let d = self.space(space).comult.ok_or_else(|| Error::Invalid("Sweedler index in a space without coproduct".into()))?;
        let (a, b) = (self.fresh(), self.fresh());
        self.push(d, vec![parent, a, b]);
        Ok((a, b))
    }

    fn atom(&mut self, name: &str, leg: Option<usize>, path: &Path) -> Result<(Leg, SpaceId)> {
        if self.defs.contains(name) {
            if leg.is_some() {
                return Err(Error::Invalid(format!("definition {name} has no legs")));
            }
        } else {
            let b = self.ctx.binds.get(name).ok_or_else(|| Error::Invalid(format!("unbound name {name}")))?.clone();
            if let Binding::Tensor(t, spaces) = &b {
                if spaces.len() == 1 && leg.is_none() && *path == Path::None {
                    let l = self.fresh();
                    self.push(t, vec![l]);
                    return Ok((l, spaces[0]));
                }
            }
            if matches!(b, Binding::Var(_)) && leg.is_some() {
                return Err(Error::Invalid(format!("variable {name} has no legs")));
            }
            self.instance(name)?;
        }
        let k = leg.unwrap_or(1);
        let flat_n = self.flat_sizes.get(&(name.to_string(), k)).copied();
        let ntrees = self.trees[name].len();
        if k == 0 || k > ntrees || (leg.is_none() && ntrees > 1) {
            return Err(Error::Invalid(format!("{name}{} is not a leg", leg.map(|x| x.to_string()).unwrap_or_default())));
        }
        let space = self.trees[name][k - 1].space;
        let mut cur = 0usize;
        match path {
            Path::None => {}
            Path::Tree(p) => {
                for &d in p {
                    let node = &self.trees[name][k - 1].nodes[cur];
                    match node.state {
                        TState::Free => {
                            let parent = node.leg;
                            let (a, b) = self.split(space, parent)?;
                            let tree = &mut self.trees.get_mut(name).unwrap()[k - 1];
                            let n = tree.nodes.len();
                            tree.nodes.push(TNode { leg: a, state: TState::Free });
                            tree.nodes.push(TNode { leg: b, state: TState::Free });
                            tree.nodes[cur].state = TState::Split(n, n + 1);
                            cur = if d == 1 { n } else { n + 1 };
                        }
                        TState::Split(a, b) => cur = if d == 1 { a } else { b },
                        _ => return Err(Error::Invalid(format!("{name}{k} used both whole and split"))),
                    }
                }
            }
            Path::Flat(i) => {
                let n = flat_n.unwrap();
                let node = &self.trees[name][k - 1].nodes[0];
                let children = match &node.state {
                    TState::Flat(ch) => ch.clone(),
                    TState::Free if n == 1 => vec![0],
                    TState::Free => {
                        let mut cur_leg = node.leg;
                        let mut legs = Vec::new();
                        for _ in 0..n - 1 {
                            let (a, b) = self.split(space, cur_leg)?;
                            legs.push(a);
                            cur_leg = b;
                        }
                        legs.push(cur_leg);
                        let tree = &mut self.trees.get_mut(name).unwrap()[k - 1];
                        let base = tree.nodes.len();
                        for l in &legs {
                            tree.nodes.push(TNode { leg: *l, state: TState::Free });
                        }
                        let ch: Vec<usize> = (base..base + n).collect();
                        tree.nodes[0].state = TState::Flat(ch.clone());
                        ch
                    }
                    _ => return Err(Error::Invalid(format!("{name}{k} mixes Sweedler styles"))),
                };
                if *i == 0 || *i > n {
                    return Err(Error::Invalid(format!("Sweedler index {i} on {name}")));
                }
                cur = children[i - 1];
            }
        }
        let node = &mut self.trees.get_mut(name).unwrap()[k - 1].nodes[cur];
        match node.state {
            TState::Free => {
                node.state = TState::Used;
                Ok((node.leg, space))
            }
            _ => Err(Error::Invalid(format!("{name}{k} {path:?} used twice or after splitting"))),
        }
    }

    /// Builds a word; returns its element leg, or `None` for a pure scalar
    /// when `need` is false.
    fn word(&mut self, w: &Word, expect: Option<SpaceId>, need: bool) -> Result<Option<(Leg, SpaceId)>> {
        let mut legs: Vec<(Leg, SpaceId)> = Vec::new();
        for f in w {
            match f {
                Factor::Num(v) => {
                    let t = SparseTensor::scalar(self.ctx.field.int(*v));
                    self.push(&t, vec![]);
                }
                Factor::Atom { name, leg, path } => legs.push(self.atom(name, *leg, path)?),
                Factor::Call { name, args } => {
                    let b = self.ctx.binds.get(name).ok_or_else(|| Error::Invalid(format!("unbound name {name}")))?.clone();
                    match b {
                        Binding::Map(t, src, dst) => {
                            if args.len() != 1 {
                                return Err(Error::Invalid(format!("{name} takes one argument")));
                            }
                            let (a, _) = self.word(&args[0], Some(src), true)?.unwrap();
                            self.check_space(a, src, name)?;
                            let out = self.fresh();
                            self.push(t, vec![a, out]);
                            legs.push((out, dst));
                        }
                        Binding::Form(t, spaces) => {
                            if args.len() != spaces.len() {
                                return Err(Error::Invalid(format!("{name} takes {} arguments", spaces.len())));
                            }
                            let mut al = Vec::new();
                            for (a, s) in args.iter().zip(&spaces) {
                                let (l, _) = self.word(a, Some(*s), true)?.unwrap();
                                self.check_space(l, *s, name)?;
                                al.push(l);
                            }
                            self.push(t, al);
                        }
                        Binding::FunVar(spaces) => {
                            if !self.vars.contains(&name.as_str()) {
                                return Err(Error::Invalid(format!("variable {name} not requested")));
                            }
                            if self.funvar_legs.contains_key(name) {
                                return Err(Error::Invalid(format!("functional variable {name} applied twice")));
                            }
                            if args.len() != spaces.len() {
                                return Err(Error::Invalid(format!("{name} takes {} arguments", spaces.len())));
                            }
                            let mut al = Vec::new();
                            for (a, s) in args.iter().zip(&spaces) {
                                let (l, _) = self.word(a, Some(*s), true)?.unwrap();
                                self.check_space(l, *s, name)?;
                                al.push(self.make_open(l));
                            }
                            self.funvar_legs.insert(name.clone(), al);
                        }
                        _ => return Err(Error::Invalid(format!("{name} cannot be applied"))),
                    }
                }
            }
        }
        if legs.is_empty() {
            if !need {
                return Ok(None);
            }
            let s = expect.ok_or_else(|| Error::Invalid("cannot infer the algebra of an empty word".into()))?;
            let u = self.space(s).unit.ok_or_else(|| Error::Invalid("space without unit".into()))?;
            let l = self.fresh();
            self.push(u, vec![l]);
            return Ok(Some((l, s)));
        }
        let space = legs[0].1;
        if legs.iter().any(|(_, s)| *s != space) {
            return Err(Error::Invalid("product of elements of different algebras".into()));
        }
        let mut cur = legs[0].0;
        if legs.len() > 1 {
            let m = self.space(space).mult.ok_or_else(|| Error::Invalid("product in a space without multiplication".into()))?;
            for (l, _) in &legs[1..] {
                let out = self.fresh();
                self.push(m, vec![cur, *l, out]);
                cur = out;
            }
        }
        Ok(Some((cur, space)))
    }

    fn check_space(&self, leg: Leg, want: SpaceId, name: &str) -> Result<()> {
        let d = self.leg_dim(leg);
        if d != self.ctx.dim(want) {
            return Err(Error::Invalid(format!("argument of {name} lives in the wrong space")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kz2(f: Field) -> (SparseTensor, SparseTensor, SparseTensor) {
        // basis 1, g
        let mut m = SparseTensor::zero(vec![2, 2, 2]);
        for i in 0..2 {
            for j in 0..2 {
                m.add_idx(&[i, j, (i + j) % 2], f.one());
            }
        }
        let mut d = SparseTensor::zero(vec![2, 2, 2]);
        d.add_idx(&[0, 0, 0], f.one());
        d.add_idx(&[1, 1, 1], f.one());
        let u = SparseTensor::vector(&[f.one(), f.zero()]);
        (m, d, u)
    }

    #[test]
    fn products_and_sweedler() {
        let f = Field::Q;
        let (m, d, u) = kz2(f);
        let mut c = Ctx::new(f);
        let h = c.space(Space { dim: 2, mult: Some(&m), unit: Some(&u), comult: Some(&d) });
        c.var("h", h).var("k", h);
        // h·k as a bilinear map
        let t = c.eval(&["h", "k"], "h k").unwrap();
        assert_eq!(t.get(&[1, 1, 0]), Some(&f.one()));
        // Δ(h) = h_1 ⊗ h_2
        let t = c.eval(&["h"], "h_1 | h_2").unwrap();
        assert_eq!(t.get(&[1, 1, 1]), Some(&f.one()));
        assert_eq!(t.nnz(), 2);
        // identity through an open leg
        let t = c.eval(&["h"], "h").unwrap();
        assert_eq!(t.nnz(), 2);
        assert!(c.eval(&["h"], "h_1").is_err());
        assert!(c.eval(&["h"], "h h").is_err());
        let t = c.eval(&[], "2 | 1").unwrap();
        assert_eq!(t.get(&[0, 0]), Some(&f.int(2)));
    }

    #[test]
    fn definitions() {
        let f = Field::Q;
        let (m, d, u) = kz2(f);
        let mut c = Ctx::new(f);
        let h = c.space(Space { dim: 2, mult: Some(&m), unit: Some(&u), comult: Some(&d) });
        c.var("h", h).var("k", h);
        let a = c.eval(&["h", "k"], "s = h k; s_1 | s_2").unwrap();
        let b = c.eval(&["h", "k"], "h_1 k_1 | h_2 k_2").unwrap();
        assert_eq!(a, b);
        assert!(c.eval(&["h"], "s = h; h").is_err());
        assert!(c.eval(&["h"], "h = h; h").is_err());
    }
}
