//! Boolean functions as sets of bit strings and their decomposition into
//! iterated differences of monotone functions, `M1 - (M2 - (… - Mm))`.
//!
//! Bit 1 of a bit string (the leftmost character) is the first atom, so
//! `101` is the assignment `p ∧ ¬q ∧ r`. A function of arity `k` is stored as
//! a membership table indexed by the integer value of the bit string.

use std::fmt;
use std::str::FromStr;

/// Largest supported arity.
pub const MAX_ARITY: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HausdorffError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("arity {0} exceeds the limit of {MAX_ARITY}")]
    ArityTooLarge(usize),

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("invalid chain: {0}")]
    InvalidChain(String),
}

/// A fixed-length bit string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    arity: usize,
    value: u32,
}

impl BitVec {
    pub fn new(arity: usize, value: u32) -> Self {
        assert!(arity <= MAX_ARITY && (value as u64) < (1u64 << arity));
        Self { arity, value }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let value = bits.iter().fold(0u32, |v, &b| (v << 1) | b as u32);
        Self::new(bits.len(), value)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    /// Value of atom `j` (0-based, leftmost first).
    pub fn bit(&self, j: usize) -> bool {
        self.value >> (self.arity - 1 - j) & 1 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.arity).filter(|&j| self.bit(j))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.arity {
            f.write_str(if self.bit(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitVec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.len() > MAX_ARITY {
            return Err(format!("bit string `{s}` is too long"));
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(format!("`{s}` is not a bit string")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_bits(&bits))
    }
}

/// A boolean function of `arity` atoms, as its set of satisfying assignments.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolFunc {
    arity: usize,
    table: Vec<bool>,
}

impl BoolFunc {
    pub fn empty(arity: usize) -> Result<Self, HausdorffError> {
        if arity > MAX_ARITY {
            return Err(HausdorffError::ArityTooLarge(arity));
        }
        Ok(Self {
            arity,
            table: vec![false; 1 << arity],
        })
    }

    pub fn full(arity: usize) -> Result<Self, HausdorffError> {
        let mut f = Self::empty(arity)?;
        f.table.fill(true);
        Ok(f)
    }

    pub fn from_members<I>(arity: usize, members: I) -> Result<Self, HausdorffError>
    where
        I: IntoIterator<Item = BitVec>,
    {
        let mut f = Self::empty(arity)?;
        for v in members {
            f.insert(v)?;
        }
        Ok(f)
    }

    /// Builds the function whose membership table is `pred` on bit-string values.
    pub fn from_fn(arity: usize, pred: impl Fn(BitVec) -> bool) -> Result<Self, HausdorffError> {
        let mut f = Self::empty(arity)?;
        for value in 0..f.table.len() as u32 {
            f.table[value as usize] = pred(BitVec::new(arity, value));
        }
        Ok(f)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn check(&self, v: BitVec) -> Result<(), HausdorffError> {
        if v.arity != self.arity {
            return Err(HausdorffError::ArityMismatch {
                expected: self.arity,
                found: v.arity,
            });
        }
        Ok(())
    }

    pub fn insert(&mut self, v: BitVec) -> Result<(), HausdorffError> {
        self.check(v)?;
        self.table[v.value as usize] = true;
        Ok(())
    }

    pub fn contains(&self, v: BitVec) -> Result<bool, HausdorffError> {
        self.check(v)?;
        Ok(self.table[v.value as usize])
    }

    pub fn len(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.table.iter().any(|&b| b)
    }

    /// Members in increasing order of value.
    pub fn members(&self) -> impl Iterator<Item = BitVec> + '_ {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(v, _)| BitVec::new(self.arity, v as u32))
    }

    pub fn is_subset(&self, other: &BoolFunc) -> bool {
        self.arity == other.arity && self.table.iter().zip(&other.table).all(|(&a, &b)| !a || b)
    }

    pub fn difference(&self, other: &BoolFunc) -> BoolFunc {
        assert_eq!(self.arity, other.arity);
        BoolFunc {
            arity: self.arity,
            table: self.table.iter().zip(&other.table).map(|(&a, &b)| a && !b).collect(),
        }
    }

    /// Smallest upward-closed superset under the bitwise order.
    pub fn upward_closure(&self) -> BoolFunc {
        let mut table = self.table.clone();
        for bit in 0..self.arity {
            let flag = 1usize << bit;
            for v in 0..table.len() {
                if v & flag != 0 && table[v ^ flag] {
                    table[v] = true;
                }
            }
        }
        BoolFunc {
            arity: self.arity,
            table,
        }
    }

    pub fn is_monotone(&self) -> bool {
        (0..self.arity).all(|bit| {
            let flag = 1usize << bit;
            (0..self.table.len()).all(|v| v & flag != 0 || !self.table[v] || self.table[v | flag])
        })
    }

    /// Members with no strictly smaller member.
    pub fn minimal_elements(&self) -> Vec<BitVec> {
        let members: Vec<BitVec> = self.members().collect();
        members
            .iter()
            .copied()
            .filter(|m| {
                !members
                    .iter()
                    .any(|o| o.value != m.value && o.value & m.value == o.value)
            })
            .collect()
    }

    /// A disjunctive rendering. Monotone functions are written as the
    /// disjunction of their minimal elements, other functions as minterms.
    pub fn to_dnf(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.arity);
        if self.is_empty() {
            return "false".into();
        }
        let monotone = self.is_monotone();
        let mut terms: Vec<BitVec> = if monotone {
            self.minimal_elements()
        } else {
            self.members().collect()
        };
        terms.sort_by_key(|t| (t.value.count_ones(), std::cmp::Reverse(t.value)));
        let terms: Vec<Vec<String>> = terms
            .iter()
            .map(|t| {
                (0..self.arity)
                    .filter_map(|j| match (t.bit(j), monotone) {
                        (true, _) => Some(names[j].clone()),
                        (false, false) => Some(format!("not {}", names[j])),
                        (false, true) => None,
                    })
                    .collect()
            })
            .collect();
        if terms.len() == 1 {
            return match terms[0].len() {
                0 => "true".into(),
                _ => terms[0].join(" and "),
            };
        }
        terms
            .iter()
            .map(|lits| match lits.len() {
                0 => "true".to_string(),
                1 => lits[0].clone(),
                _ => format!("({})", lits.join(" and ")),
            })
            .collect::<Vec<_>>()
            .join(" or ")
    }
}

/// Default atom names: `p q r s t u v w`, then `p1 … pk` for larger arities.
pub fn atom_names(arity: usize) -> Vec<String> {
    if arity <= 8 {
        "pqrstuvw".chars().take(arity).map(String::from).collect()
    } else {
        (1..=arity).map(|i| format!("p{i}")).collect()
    }
}

impl fmt::Display for BoolFunc {
    /// `{010, 011, 101}` or `∅`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let members: Vec<String> = self.members().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", members.join(", "))
    }
}

impl FromStr for BoolFunc {
    type Err = HausdorffError;

    /// Truth-table text: `arity: k`, then one satisfying bit string per line.
    fn from_str(text: &str) -> Result<Self, HausdorffError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line, message: String| HausdorffError::Format { line, message };
        let (no, first) = lines
            .next()
            .ok_or_else(|| err(0, "missing `arity:` line".into()))?;
        let arity = match first.split_once(':') {
            Some((k, v)) if k.trim() == "arity" => v
                .trim()
                .parse::<usize>()
                .map_err(|_| err(no, format!("invalid arity `{}`", v.trim())))?,
            _ => return Err(err(no, "expected `arity:`".into())),
        };
        let mut f = BoolFunc::empty(arity)?;
        for (no, line) in lines {
            let v: BitVec = line.parse().map_err(|m| err(no, m))?;
            if v.arity != arity {
                return Err(err(no, format!("`{line}` does not have {arity} bits")));
            }
            f.insert(v)?;
        }
        Ok(f)
    }
}

/// An iterated difference `M1 - (M2 - (… - Mm))` of monotone functions with
/// `M1 ⊋ M2 ⊋ … ⊋ Mm`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    arity: usize,
    links: Vec<BoolFunc>,
}

impl Chain {
    pub fn new(links: Vec<BoolFunc>) -> Result<Self, HausdorffError> {
        let first = links
            .first()
            .ok_or_else(|| HausdorffError::InvalidChain("a chain needs at least one link".into()))?;
        let arity = first.arity;
        for (i, link) in links.iter().enumerate() {
            if link.arity != arity {
                return Err(HausdorffError::ArityMismatch {
                    expected: arity,
                    found: link.arity,
                });
            }
            if !link.is_monotone() {
                return Err(HausdorffError::InvalidChain(format!("link {} is not monotone", i + 1)));
            }
            if i > 0 && (!link.is_subset(&links[i - 1]) || link == &links[i - 1]) {
                return Err(HausdorffError::InvalidChain(format!(
                    "link {} does not strictly shrink link {}",
                    i + 1,
                    i
                )));
            }
        }
        Ok(Self { arity, links })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn links(&self) -> &[BoolFunc] {
        &self.links
    }

    /// Value of the nested difference at `v`, evaluated right to left.
    pub fn eval(&self, v: BitVec) -> Result<bool, HausdorffError> {
        let mut acc = false;
        for link in self.links.iter().rev() {
            acc = link.contains(v)? && !acc;
        }
        Ok(acc)
    }

    /// Same value via the nesting: true iff the deepest link containing `v`
    /// has odd (1-based) index.
    pub fn eval_by_depth(&self, v: BitVec) -> Result<bool, HausdorffError> {
        let mut deepest = 0;
        for (i, link) in self.links.iter().enumerate() {
            if link.contains(v)? {
                deepest = i + 1;
            }
        }
        Ok(deepest % 2 == 1)
    }
}

/// Decomposes `x` as `↑x - (↑x - x)`, recursing on `↑x - x` until a monotone
/// remainder is reached. A monotone input (including `∅`) is its own
/// one-link chain.
pub fn normal_form(x: &BoolFunc) -> Chain {
    let mut links = Vec::new();
    let mut rest = x.clone();
    loop {
        let up = rest.upward_closure();
        if up == rest {
            links.push(rest);
            break;
        }
        let next = up.difference(&rest);
        links.push(up);
        rest = next;
    }
    Chain::new(links).expect("normal form links are monotone and strictly decreasing")
}
