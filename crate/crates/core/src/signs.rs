//! Sign symbols for the chain-complex conventions and their compatibility table.
//!
//! Each symbol is a function of integer indices with values in {+1, -1}, written
//! as `global * (-1)^e` where `e` is a sum of linear, bilinear and `x(x-1)/2` terms.
//! Since every such exponent is determined mod 2 by the indices mod 4, checking an
//! equation on the window `{-4, ..., 3}` decides it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The twelve sign symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    T,
    Tens1,
    Tens2,
    Tp1,
    Tp2,
    Asso,
    C,
    Ath,
    Hom1,
    Hom2,
    Th1,
    Th2,
}

impl Symbol {
    pub const ALL: [Symbol; 12] = [
        Symbol::T,
        Symbol::Tens1,
        Symbol::Tens2,
        Symbol::Tp1,
        Symbol::Tp2,
        Symbol::Asso,
        Symbol::C,
        Symbol::Ath,
        Symbol::Hom1,
        Symbol::Hom2,
        Symbol::Th1,
        Symbol::Th2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::T => "T",
            Symbol::Tens1 => "1tens",
            Symbol::Tens2 => "2tens",
            Symbol::Tp1 => "tp1",
            Symbol::Tp2 => "tp2",
            Symbol::Asso => "asso",
            Symbol::C => "c",
            Symbol::Ath => "ath",
            Symbol::Hom1 => "1hom",
            Symbol::Hom2 => "2hom",
            Symbol::Th1 => "th1",
            Symbol::Th2 => "th2",
        }
    }

    pub fn from_name(s: &str) -> Result<Symbol> {
        Symbol::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown sign symbol {s:?}")))
    }

    /// Number of indices the symbol takes.
    pub fn arity(self) -> usize {
        match self {
            Symbol::T => 1,
            Symbol::Asso => 3,
            _ => 2,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

const VARS: [char; 4] = ['i', 'j', 'k', 'l'];

/// `global * (-1)^(sum linear[a] x_a + sum bilinear (x_a x_b) + sum binom[a] x_a(x_a-1)/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignExpr {
    pub arity: usize,
    pub global: i8,
    pub linear: [bool; 4],
    pub bilinear: Vec<(usize, usize)>,
    pub binom: [bool; 4],
}

impl SignExpr {
    pub fn constant(arity: usize, global: i8) -> SignExpr {
        SignExpr { arity, global: if global < 0 { -1 } else { 1 }, linear: [false; 4], bilinear: vec![], binom: [false; 4] }
    }

    pub fn with_linear(mut self, vars: &[usize]) -> SignExpr {
        for &v in vars {
            self.linear[v] ^= true;
        }
        self
    }

    pub fn with_bilinear(mut self, a: usize, b: usize) -> SignExpr {
        self.bilinear.push((a, b));
        self
    }

    pub fn with_binom(mut self, v: usize) -> SignExpr {
        self.binom[v] ^= true;
        self
    }

    pub fn negated(mut self) -> SignExpr {
        self.global = -self.global;
        self
    }

    /// Parity of the exponent at `x` (indices beyond `x.len()` read as 0).
    fn parity(&self, x: &[i64]) -> bool {
        let at = |a: usize| x.get(a).copied().unwrap_or(0);
        let mut e: i64 = 0;
        for a in 0..4 {
            if self.linear[a] {
                e += at(a);
            }
            if self.binom[a] {
                let v = at(a);
                e += v * (v - 1) / 2;
            }
        }
        for &(a, b) in &self.bilinear {
            e += at(a) * at(b);
        }
        e.rem_euclid(2) == 1
    }

    /// Value in {+1, -1}; fails if fewer than `arity` indices are supplied.
    pub fn eval(&self, x: &[i64]) -> Result<i8> {
        if x.len() < self.arity {
            return Err(Error::MissingIndex { needed: self.arity, given: x.len() });
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[i64]) -> i8 {
        if self.parity(x) {
            -self.global
        } else {
            self.global
        }
    }
}

impl fmt::Display for SignExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for a in 0..4 {
            if self.linear[a] {
                terms.push(VARS[a].to_string());
            }
        }
        for &(a, b) in &self.bilinear {
            terms.push(format!("{}{}", VARS[a], VARS[b]));
        }
        for a in 0..4 {
            if self.binom[a] {
                terms.push(format!("{0}({0}-1)/2", VARS[a]));
            }
        }
        let g = if self.global < 0 { "-" } else { "" };
        if terms.is_empty() {
            write!(f, "{g}1")
        } else {
            write!(f, "{g}(-1)^{{{}}}", terms.join("+"))
        }
    }
}

/// A value for every sign symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignAssignment {
    exprs: Vec<SignExpr>,
}

impl SignAssignment {
    /// Builds an assignment from (symbol, expression) pairs; all twelve symbols are required.
    pub fn from_pairs(pairs: Vec<(Symbol, SignExpr)>) -> Result<SignAssignment> {
        let mut slots: Vec<Option<SignExpr>> = vec![None; 12];
        for (s, e) in pairs {
            if e.arity != s.arity() {
                return Err(Error::SignTable(format!("{s} takes {} indices, expression has {}", s.arity(), e.arity)));
            }
            slots[s.index()] = Some(e);
        }
        let missing: Vec<&str> = Symbol::ALL.iter().filter(|s| slots[s.index()].is_none()).map(|s| s.name()).collect();
        if !missing.is_empty() {
            return Err(Error::SignTable(format!("missing symbols: {}", missing.join(", "))));
        }
        Ok(SignAssignment { exprs: slots.into_iter().map(|e| e.expect("checked")).collect() })
    }

    pub fn get(&self, s: Symbol) -> &SignExpr {
        &self.exprs[s.index()]
    }

    /// Value of `s` at `x`; `x` must carry at least `s.arity()` indices.
    pub fn sign(&self, s: Symbol, x: &[i64]) -> i8 {
        debug_assert!(x.len() >= s.arity());
        self.exprs[s.index()].eval_unchecked(x)
    }

    pub fn eval(&self, s: Symbol, x: &[i64]) -> Result<i8> {
        self.exprs[s.index()].eval(x)
    }

    pub fn with(mut self, s: Symbol, e: SignExpr) -> SignAssignment {
        self.exprs[s.index()] = e;
        self
    }

    /// Flips the global sign of `s`.
    pub fn flipped(mut self, s: Symbol) -> SignAssignment {
        let e = self.exprs[s.index()].clone().negated();
        self.exprs[s.index()] = e;
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, &SignExpr)> {
        Symbol::ALL.into_iter().zip(self.exprs.iter())
    }
}

impl Default for SignAssignment {
    fn default() -> Self {
        default_assignment(1, 1)
    }
}

/// The two-parameter family `(a, b)` of the sign theorem; `(1, 1)` is the standard choice.
pub fn default_assignment(a: i8, b: i8) -> SignAssignment {
    let (i, j) = (0, 1);
    SignAssignment::from_pairs(vec![
        (Symbol::T, SignExpr::constant(1, -1)),
        (Symbol::Tens1, SignExpr::constant(2, 1)),
        (Symbol::Tens2, SignExpr::constant(2, 1).with_linear(&[i])),
        (Symbol::Tp1, SignExpr::constant(2, a)),
        (Symbol::Tp2, SignExpr::constant(2, a).with_linear(&[i])),
        (Symbol::Asso, SignExpr::constant(3, 1)),
        (Symbol::C, SignExpr::constant(2, 1).with_bilinear(i, j)),
        (Symbol::Ath, SignExpr::constant(2, b).with_binom(i)),
        (Symbol::Hom1, SignExpr::constant(2, 1)),
        (Symbol::Hom2, SignExpr::constant(2, -1).with_linear(&[i, j])),
        (Symbol::Th1, SignExpr::constant(2, 1)),
        (Symbol::Th2, SignExpr::constant(2, a).with_linear(&[i, j])),
    ])
    .expect("all symbols present")
}

/// An affine index `c + sum coeff[a] x_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Affine {
    pub coeff: [i64; 4],
    pub constant: i64,
}

impl Affine {
    fn eval(&self, x: &[i64; 4]) -> i64 {
        self.constant + (0..4).map(|a| self.coeff[a] * x[a]).sum::<i64>()
    }

    fn parse(s: &str) -> Result<Affine> {
        let mut out = Affine { coeff: [0; 4], constant: 0 };
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut sign = 1i64;
        let mut num = String::new();
        let flush = |num: &mut String, sign: i64, out: &mut Affine| -> Result<()> {
            if !num.is_empty() {
                out.constant += sign * num.parse::<i64>().map_err(|e| Error::Parse(e.to_string()))?;
                num.clear();
            }
            Ok(())
        };
        for ch in s.chars() {
            match ch {
                '+' | '-' => {
                    flush(&mut num, sign, &mut out)?;
                    sign = if ch == '-' { -1 } else { 1 };
                }
                '0'..='9' => num.push(ch),
                v => {
                    let a = VARS
                        .iter()
                        .position(|&c| c == v)
                        .ok_or_else(|| Error::Parse(format!("bad index variable {v:?} in {s:?}")))?;
                    out.coeff[a] += sign;
                }
            }
        }
        flush(&mut num, sign, &mut out)?;
        Ok(out)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for a in 0..4 {
            match self.coeff[a] {
                0 => {}
                1 => s.push_str(&format!("{}{}", if s.is_empty() { "" } else { "+" }, VARS[a])),
                -1 => s.push_str(&format!("-{}", VARS[a])),
                c => s.push_str(&format!("{}{c}{}", if s.is_empty() || c < 0 { "" } else { "+" }, VARS[a])),
            }
        }
        if self.constant != 0 || s.is_empty() {
            if self.constant > 0 && !s.is_empty() {
                s.push('+');
            }
            s.push_str(&self.constant.to_string());
        }
        f.write_str(&s)
    }
}

/// One factor `eps^sym_{args}` of an equation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    pub symbol: Symbol,
    pub args: Vec<Affine>,
}

/// Required value of an equation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rhs {
    Const(i8),
    Expr(SignExpr),
}

/// A compatibility equation: the product of factors equals `rhs` for all indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub id: String,
    pub reason: &'static str,
    pub vars: usize,
    pub factors: Vec<Factor>,
    pub rhs: Rhs,
}

impl Equation {
    /// Parses `"sym[args] sym[args] ... = +-1"`.
    pub fn parse(id: &str, reason: &'static str, text: &str) -> Result<Equation> {
        let (lhs, rhs) = text.split_once('=').ok_or_else(|| Error::Parse(format!("no '=' in {text:?}")))?;
        let rhs = match rhs.trim() {
            "1" | "+1" => Rhs::Const(1),
            "-1" => Rhs::Const(-1),
            other => return Err(Error::Parse(format!("unsupported right-hand side {other:?}"))),
        };
        let mut factors = Vec::new();
        for tok in lhs.split_whitespace() {
            let (name, rest) = tok.split_once('[').ok_or_else(|| Error::Parse(format!("bad factor {tok:?}")))?;
            let args = rest.strip_suffix(']').ok_or_else(|| Error::Parse(format!("bad factor {tok:?}")))?;
            let symbol = Symbol::from_name(name)?;
            let args = args.split(',').map(Affine::parse).collect::<Result<Vec<_>>>()?;
            if args.len() != symbol.arity() {
                return Err(Error::MissingIndex { needed: symbol.arity(), given: args.len() });
            }
            factors.push(Factor { symbol, args });
        }
        let vars = factors
            .iter()
            .flat_map(|f| f.args.iter())
            .flat_map(|a| (0..4).filter(move |&v| a.coeff[v] != 0))
            .max()
            .map_or(0, |v| v + 1);
        Ok(Equation { id: id.to_string(), reason, vars, factors, rhs })
    }

    /// Left side divided by right side at the free indices `x`.
    pub fn residual(&self, s: &SignAssignment, x: &[i64; 4]) -> i8 {
        let mut v: i8 = 1;
        for f in &self.factors {
            let args: Vec<i64> = f.args.iter().map(|a| a.eval(x)).collect();
            v *= s.sign(f.symbol, &args);
        }
        let r = match &self.rhs {
            Rhs::Const(c) => *c,
            Rhs::Expr(e) => e.eval_unchecked(x),
        };
        v * r
    }

    /// First index tuple in `window^vars` where the equation fails.
    pub fn first_failure(&self, s: &SignAssignment, window: std::ops::RangeInclusive<i64>) -> Option<Vec<i64>> {
        let vals: Vec<i64> = window.collect();
        let total = vals.len().pow(self.vars as u32);
        for code in 0..total {
            let mut x = [0i64; 4];
            let mut c = code;
            for slot in x.iter_mut().take(self.vars) {
                *slot = vals[c % vals.len()];
                c /= vals.len();
            }
            if self.residual(s, &x) != 1 {
                return Some(x[..self.vars].to_vec());
            }
        }
        None
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs: Vec<String> = self
            .factors
            .iter()
            .map(|fa| format!("{}[{}]", fa.symbol, fa.args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        match &self.rhs {
            Rhs::Const(c) => write!(f, "{} = {c}", lhs.join(" ")),
            Rhs::Expr(e) => write!(f, "{} = {e}", lhs.join(" ")),
        }
    }
}

const ROWS: [(&str, &str); 21] = [
    ("1tens[i,j] 1tens[i,j-1] 2tens[i,j] 2tens[i-1,j] = -1", "A (x) B is a complex"),
    ("1tens[i,j] 1tens[i,j+k] 1tens[i+j,k] asso[i,j,k] asso[i-1,j,k] = 1", "asso is a morphism"),
    ("2tens[i,j] 1tens[j,k] 1tens[i+j,k] 2tens[i,j+k] asso[i,j,k] asso[i,j-1,k] = 1", "asso is a morphism"),
    ("2tens[i+j,k] 2tens[j,k] 2tens[i,j+k] asso[i,j,k] asso[i,j,k-1] = 1", "asso is a morphism"),
    ("asso[i,j,k] asso[i,j+k,l] asso[j,k,l] asso[i,j,k+l] asso[i+j,k,l] = 1", "pentagon commutes"),
    ("1tens[i,j] 2tens[j,i] c[i,j] c[i-1,j] = 1", "c is a morphism"),
    ("1tens[j,i] 2tens[i,j] c[i,j] c[i,j-1] = 1", "c is a morphism"),
    ("c[i,j] c[j,i] = 1", "c is self-inverse"),
    ("c[j,k] c[i,k] c[i+j,k] asso[i,j,k] asso[k,i,j] asso[i,k,j] = 1", "hexagons commute"),
    ("T[i] T[i+j] 1tens[i,j] 1tens[i+1,j] tp1[i,j] tp1[i-1,j] = 1", "tp1 is a morphism"),
    ("T[i+j] 2tens[i,j] 2tens[i+1,j] tp1[i,j] tp1[i,j-1] = 1", "tp1 is a morphism"),
    ("T[j] T[i+j] 2tens[i,j] 2tens[i,j+1] tp2[i,j] tp2[i,j-1] = 1", "tp2 is a morphism"),
    ("T[i+j] 1tens[i,j] 1tens[i,j+1] tp2[i,j] tp2[i-1,j] = 1", "tp2 is a morphism"),
    ("tp1[i,j] tp1[i,j+1] tp2[i,j] tp2[i+1,j] = -1", "the tp square anti-commutes"),
    ("tp1[i,j] tp1[i+j,k] tp1[i,j+k] asso[i,j,k] asso[i+1,j,k] = 1", "tp and asso commute"),
    ("tp2[i,j] tp1[i+j,k] tp2[i,j+k] tp1[j,k] asso[i,j,k] asso[i,j+1,k] = 1", "tp and asso commute"),
    ("tp2[i+j,k] tp2[i,j+k] tp2[j,k] asso[i,j,k] asso[i,j,k+1] = 1", "tp and asso commute"),
    ("tp1[i,j] tp2[j,i] c[i,j] c[i+1,j] = 1", "tp and c square commutes"),
    ("1hom[i,j] 1hom[i,j-1] 2hom[i,j] 2hom[i+1,j] = -1", "[A,B] is a complex"),
    ("1tens[i,j] 2tens[i,j] 1hom[j-1,i+j-1] ath[i,j-1] ath[i-1,j] = -1", "ath is well defined"),
    ("1tens[i,j] 2hom[j,i+j] ath[i-1,j] ath[i,j] = 1", "ath is well defined"),
];

/// The 21 compatibility rows plus the bidual relation (id `bid`).
#[derive(Debug, Clone)]
pub struct EquationTable {
    pub rows: Vec<Equation>,
}

impl EquationTable {
    pub fn standard() -> EquationTable {
        let mut rows: Vec<Equation> = ROWS
            .iter()
            .enumerate()
            .map(|(n, (text, reason))| Equation::parse(&format!("row{}", n + 1), reason, text).expect("table parses"))
            .collect();
        let mut bid = Equation::parse("bid", "bidual sign", "ath[j-i,i] ath[i,j-i] c[j-i,i] = 1").expect("parses");
        bid.rhs = Rhs::Expr(SignExpr::constant(2, 1).with_binom(1));
        rows.push(bid);
        EquationTable { rows }
    }

    pub fn row(&self, id: &str) -> Option<&Equation> {
        self.rows.iter().find(|r| r.id == id)
    }
}

/// Verdict for one equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub id: String,
    pub equation: String,
    pub reason: String,
    pub pass: bool,
    pub counterexample: Option<Vec<i64>>,
}

/// The decision window `{-4, ..., 3}`.
pub const WINDOW: std::ops::RangeInclusive<i64> = -4..=3;

pub fn verify_row(eq: &Equation, s: &SignAssignment, window: std::ops::RangeInclusive<i64>) -> RowReport {
    let counterexample = eq.first_failure(s, window);
    RowReport {
        id: eq.id.clone(),
        equation: eq.to_string(),
        reason: eq.reason.to_string(),
        pass: counterexample.is_none(),
        counterexample,
    }
}

/// Checks every row of the standard table on the decision window.
pub fn verify_table(s: &SignAssignment) -> Vec<RowReport> {
    EquationTable::standard().rows.iter().map(|eq| verify_row(eq, s, WINDOW)).collect()
}

/// A way to perturb an assignment: flip a global sign or toggle an exponent term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Toggle {
    Global(Symbol),
    Linear(Symbol, usize),
    Bilinear(Symbol, usize, usize),
    Binom(Symbol, usize),
}

impl Toggle {
    fn apply(&self, s: SignAssignment) -> SignAssignment {
        match *self {
            Toggle::Global(sym) => s.flipped(sym),
            Toggle::Linear(sym, v) => {
                let e = s.get(sym).clone().with_linear(&[v]);
                s.with(sym, e)
            }
            Toggle::Bilinear(sym, a, b) => {
                let e = s.get(sym).clone().with_bilinear(a, b);
                s.with(sym, e)
            }
            Toggle::Binom(sym, v) => {
                let e = s.get(sym).clone().with_binom(v);
                s.with(sym, e)
            }
        }
    }
}

/// A binary parameter of a family: when set, all its toggles are applied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParam {
    pub name: String,
    pub toggles: Vec<Toggle>,
}

/// `bases x {0,1}^params`; a family with no bases is empty.
#[derive(Debug, Clone)]
pub struct SignFamily {
    pub bases: Vec<SignAssignment>,
    pub params: Vec<FamilyParam>,
}

impl SignFamily {
    pub fn empty() -> SignFamily {
        SignFamily { bases: vec![], params: vec![] }
    }

    /// The `(a, b)` family of the sign theorem around the standard choice.
    pub fn theorem() -> SignFamily {
        SignFamily {
            bases: vec![default_assignment(1, 1)],
            params: vec![
                FamilyParam {
                    name: "a".into(),
                    toggles: vec![Toggle::Global(Symbol::Tp1), Toggle::Global(Symbol::Tp2), Toggle::Global(Symbol::Th2)],
                },
                FamilyParam { name: "b".into(), toggles: vec![Toggle::Global(Symbol::Ath)] },
            ],
        }
    }

    pub fn size(&self) -> u128 {
        (self.bases.len() as u128).saturating_mul(1u128.checked_shl(self.params.len() as u32).unwrap_or(u128::MAX))
    }
}

/// A member of a family that passes the whole table, with its parameter bits.
#[derive(Debug, Clone)]
pub struct SearchHit {
    pub base: usize,
    pub bits: Vec<bool>,
    pub assignment: SignAssignment,
}

/// Exhaustive search of a family; fails if the family has more than `cap` members.
pub fn search(family: &SignFamily, cap: u128) -> Result<Vec<SearchHit>> {
    let size = family.size();
    if size > cap {
        return Err(Error::SearchSpaceExceeded { size, cap });
    }
    let table = EquationTable::standard();
    let mut hits = Vec::new();
    let n = family.params.len();
    for (bi, base) in family.bases.iter().enumerate() {
        for code in 0u64..(1u64 << n) {
            let bits: Vec<bool> = (0..n).map(|k| code >> k & 1 == 1).collect();
            let mut s = base.clone();
            for (k, p) in family.params.iter().enumerate() {
                if bits[k] {
                    for t in &p.toggles {
                        s = t.apply(s);
                    }
                }
            }
            if table.rows.iter().all(|eq| eq.first_failure(&s, WINDOW).is_none()) {
                hits.push(SearchHit { base: bi, bits, assignment: s });
            }
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let s = default_assignment(1, 1);
        assert_eq!(s.eval(Symbol::C, &[1, 1]).unwrap(), -1);
        assert_eq!(s.eval(Symbol::Ath, &[0, 5]).unwrap(), 1);
        assert_eq!(s.eval(Symbol::Ath, &[2, 0]).unwrap(), -1);
        assert_eq!(s.eval(Symbol::Ath, &[3, 0]).unwrap(), -1);
        for sym in Symbol::ALL {
            let e = s.get(sym);
            assert_eq!(e.eval(&[0, 0, 0]).unwrap(), e.global);
        }
        assert_eq!(s.eval(Symbol::C, &[1]), Err(Error::MissingIndex { needed: 2, given: 1 }));
    }

    #[test]
    fn family_members_differ_where_expected() {
        let base = default_assignment(1, 1);
        let a = default_assignment(-1, 1);
        let b = default_assignment(1, -1);
        let diff = |x: &SignAssignment| -> Vec<Symbol> {
            Symbol::ALL.into_iter().filter(|&s| x.get(s) != base.get(s)).collect()
        };
        assert_eq!(diff(&a), vec![Symbol::Tp1, Symbol::Tp2, Symbol::Th2]);
        assert_eq!(diff(&b), vec![Symbol::Ath]);
        assert_eq!(base.get(Symbol::Hom2).to_string(), "-(-1)^{i+j}");
    }

    #[test]
    fn standard_choice_passes() {
        let rows = verify_table(&default_assignment(1, 1));
        assert_eq!(rows.len(), 22);
        assert!(rows.iter().all(|r| r.pass), "{rows:?}");
        assert!(verify_table(&default_assignment(1, -1)).iter().all(|r| r.pass));
    }

    #[test]
    fn negative_a_breaks_rows_15_and_17() {
        let failing: Vec<String> =
            verify_table(&default_assignment(-1, 1)).into_iter().filter(|r| !r.pass).map(|r| r.id).collect();
        assert_eq!(failing, vec!["row15", "row17"]);
    }

    #[test]
    fn corrupted_symmetry_breaks_row_6() {
        let s = default_assignment(1, 1).with(Symbol::C, SignExpr::constant(2, 1));
        let r = verify_table(&s);
        assert!(!r[5].pass);
        let x = r[5].counterexample.clone().unwrap();
        assert_eq!(x[1].rem_euclid(2), 1);
    }

    #[test]
    fn trivial_tp_signs_break_row_14() {
        let s = default_assignment(1, 1)
            .with(Symbol::Tp1, SignExpr::constant(2, 1))
            .with(Symbol::Tp2, SignExpr::constant(2, 1));
        assert!(!verify_table(&s)[13].pass);
    }

    #[test]
    fn window_agrees_with_wider_window() {
        let table = EquationTable::standard();
        for s in [default_assignment(1, 1), default_assignment(-1, 1), default_assignment(1, 1).flipped(Symbol::Asso)] {
            for eq in &table.rows {
                assert_eq!(
                    eq.first_failure(&s, WINDOW).is_none(),
                    eq.first_failure(&s, -8..=7).is_none(),
                    "{}",
                    eq.id
                );
            }
        }
    }

    #[test]
    fn search_examples() {
        let hits = search(&SignFamily::theorem(), 1 << 20).unwrap();
        let found: Vec<Vec<bool>> = hits.iter().map(|h| h.bits.clone()).collect();
        assert_eq!(found, vec![vec![false, false], vec![false, true]]);
        assert!(search(&SignFamily::empty(), 10).unwrap().is_empty());
        let big = SignFamily {
            bases: vec![default_assignment(1, 1)],
            params: (0..12).map(|k| FamilyParam { name: k.to_string(), toggles: vec![Toggle::Global(Symbol::ALL[k])] }).collect(),
        };
        assert!(matches!(search(&big, 100), Err(Error::SearchSpaceExceeded { .. })));
    }

    #[test]
    fn flipping_asso_breaks_odd_rows() {
        let s = default_assignment(1, 1).flipped(Symbol::Asso);
        let failing: Vec<String> = verify_table(&s).into_iter().filter(|r| !r.pass).map(|r| r.id).collect();
        assert_eq!(failing, vec!["row5", "row9"]);
    }

    #[test]
    fn parser_round_trip() {
        let eq = Equation::parse("x", "", "ath[j-i,i] c[i+1,j-1] = -1").unwrap();
        assert_eq!(eq.to_string(), "ath[-i+j,i] c[i+1,j-1] = -1");
        assert_eq!(eq.vars, 2);
    }
}
