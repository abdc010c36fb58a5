//! Gelfand-Cetlin type words: classification by vanishing delta-index, the
//! poset attached to each delta, shifted standard Young tableaux and the two
//! routes to `gc(n)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::indices::{chain, contract, extend, index, DeltaSeq, Side};
use crate::poset::{Ideal, WordPoset};
use crate::words::{commutation_classes, Word};

/// Largest `n` for which brute-force routes run without `--unbounded`.
pub const DEFAULT_BUDGET: usize = 5;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "REDWORD_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub limit: usize,
    pub unbounded: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            limit: DEFAULT_BUDGET,
            unbounded: false,
        }
    }
}

impl Budget {
    pub fn unbounded() -> Self {
        Budget {
            limit: usize::MAX,
            unbounded: true,
        }
    }

    /// Reads the limit from [`BUDGET_ENV`], falling back to the default.
    pub fn from_env(unbounded: bool) -> Result<Self> {
        let limit = match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{BUDGET_ENV}={v:?} is not a nonnegative integer")))?,
            Err(_) => DEFAULT_BUDGET,
        };
        Ok(Budget { limit, unbounded })
    }

    pub fn allows(&self, n: usize) -> bool {
        self.unbounded || n <= self.limit
    }

    pub fn check(&self, what: &'static str, n: usize) -> Result<()> {
        if self.allows(n) {
            Ok(())
        } else {
            Err(Error::BudgetExceeded {
                what,
                n,
                limit: self.limit,
            })
        }
    }
}

/// Strictly decreasing positive parts, written `"4,3,2"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictPartition(Vec<usize>);

impl StrictPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.last() == Some(&0) || parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::NotStrict(format!("{parts:?}")));
        }
        Ok(StrictPartition(parts))
    }

    /// `(n, n-1, ..., n-i+1)`.
    pub fn staircase(n: usize, i: usize) -> Self {
        assert!(i <= n);
        StrictPartition((n - i + 1..=n).rev().collect())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Every strict partition of `size`, parts in decreasing lexicographic
    /// order.
    pub fn all_of_size(size: usize) -> Vec<StrictPartition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<StrictPartition>) {
            if rest == 0 {
                out.push(StrictPartition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(size, size, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for StrictPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = crate::words::parse_list(s)?;
        if parts.is_empty() {
            return Err(Error::Parse("empty partition".into()));
        }
        StrictPartition::new(parts)
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Number of standard Young tableaux of shifted shape `mu`, by Thrall's
/// product formula.
pub fn thrall_g(mu: &StrictPartition) -> BigUint {
    let parts = mu.parts();
    let mut numerator = factorial(mu.size());
    let mut denominator = BigUint::one();
    for &p in parts {
        denominator *= factorial(p);
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            numerator *= BigUint::from(parts[i] - parts[j]);
            denominator *= BigUint::from(parts[i] + parts[j]);
        }
    }
    let (q, r) = (&numerator / &denominator, &numerator % &denominator);
    assert!(r.is_zero(), "Thrall formula left a remainder for {mu}");
    q
}

/// `Q_mu`: cells `(i, j)` with `i <= j <= mu_i + i - 1`, ordered
/// componentwise. Cell `(i, j)` sits in column `j`; cells are numbered row
/// by row.
pub fn shifted_poset(mu: &StrictPartition) -> Result<WordPoset> {
    let parts = mu.parts();
    let mut id = Vec::with_capacity(parts.len());
    let mut columns = Vec::new();
    for (r, &p) in parts.iter().enumerate() {
        let i = r + 1;
        id.push(columns.len());
        columns.extend((i..i + p).map(|j| j as u8));
    }
    // Cell (i, j) of row index r has id id[r] + (j - i).
    let cell = |r: usize, j: usize| -> Option<usize> {
        let i = r + 1;
        (r < parts.len() && j >= i && j < i + parts[r]).then(|| id[r] + j - i)
    };
    let mut relations = Vec::new();
    for (r, &p) in parts.iter().enumerate() {
        for j in r + 1..r + 1 + p {
            let x = cell(r, j).expect("cell exists");
            if let Some(y) = cell(r, j + 1) {
                relations.push((x, y));
            }
            if let Some(y) = cell(r + 1, j) {
                relations.push((x, y));
            }
        }
    }
    let width = parts.first().copied().unwrap_or(0);
    WordPoset::from_relations(width, columns, &relations)
}

/// Counts shifted tableaux as linear extensions of [`shifted_poset`].
pub fn syt_count_oracle(mu: &StrictPartition) -> Result<BigUint> {
    Ok(shifted_poset(mu)?.count_linear_extensions())
}

/// The delta with `ind_delta(P) = 0`, if any.
///
/// At each stage at most one of `ind_A`, `ind_D` vanishes once the width is
/// at least 2, so taking whichever does is forced.
pub fn classify_gc(p: &WordPoset) -> Result<Option<DeltaSeq>> {
    let mut sides = Vec::new();
    let mut current = p.clone();
    while current.width() > 1 {
        let side = if index(&current, Side::A)? == 0 {
            Side::A
        } else if index(&current, Side::D)? == 0 {
            Side::D
        } else {
            return Ok(None);
        };
        sides.push(side);
        current = contract(&current, side)?;
    }
    if current.width() == 0 {
        return Err(Error::NotLongest("empty poset".into()));
    }
    chain(&current, Side::A)?;
    sides.reverse();
    Ok(Some(DeltaSeq::new(sides)))
}

/// `P_1, ..., P_n` with `P_1` a single element and
/// `P_{k+1} = E_{delta_k}(P_k, P_k)`. Each stage keeps the ids of the
/// previous one and appends the new chain.
pub fn gc_stages(delta: &DeltaSeq) -> Result<Vec<WordPoset>> {
    let mut stages = Vec::with_capacity(delta.len() + 1);
    let mut current = WordPoset::from_word(&Word::new(1, vec![1])?)?;
    for &side in delta.sides() {
        let next = extend(&current, &Ideal::from_mask(current.full_mask()), side)?;
        stages.push(std::mem::replace(&mut current, next));
    }
    stages.push(current);
    Ok(stages)
}

/// The GC-type poset with `classify_gc = delta`.
pub fn gc_poset_of_delta(delta: &DeltaSeq) -> Result<WordPoset> {
    Ok(gc_stages(delta)?.pop().expect("at least one stage"))
}

/// One poset per GC-type class of rank `n >= 1`, in delta order.
pub fn gc_posets(n: usize) -> Result<Vec<(DeltaSeq, WordPoset)>> {
    if n == 0 {
        return Err(Error::OutOfDomain("GC posets need n >= 1".into()));
    }
    DeltaSeq::all(n - 1)
        .map(|d| gc_poset_of_delta(&d).map(|p| (d, p)))
        .collect()
}

/// `gc(0), ..., gc(n)` by the tableau recurrence.
pub fn gc_recurrence_table(n: usize) -> Vec<BigUint> {
    let mut gc: Vec<BigUint> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let value = if m < 2 {
            BigUint::one()
        } else {
            gc_terms_from(&gc, m).into_iter().sum()
        };
        gc.push(value);
    }
    gc
}

/// `g^(m, ..., m-i+1) * gc(m-i)` for `i = 1..=m`, given `gc(0..m)`.
fn gc_terms_from(gc: &[BigUint], m: usize) -> Vec<BigUint> {
    (1..=m)
        .map(|i| thrall_g(&StrictPartition::staircase(m, i)) * &gc[m - i])
        .collect()
}

pub fn gc_recurrence(n: usize) -> BigUint {
    gc_recurrence_table(n).pop().expect("nonempty")
}

/// The summands of the recurrence for `gc(n)`, indexed by `i = 1..=n`.
pub fn gc_recurrence_terms(n: usize) -> Vec<BigUint> {
    let table = gc_recurrence_table(n);
    gc_terms_from(&table, n)
}

/// `gc(n)` as the total number of linear extensions of the GC posets.
pub fn gc_direct(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Ok(BigUint::one());
    }
    let deltas: Vec<DeltaSeq> = DeltaSeq::all(n - 1).collect();
    let threads = std::thread::available_parallelism().map_or(1, |t| t.get());
    let chunk = deltas.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = deltas
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || -> Result<BigUint> {
                    let mut sum = BigUint::zero();
                    for d in part {
                        sum += gc_poset_of_delta(d)?.count_linear_extensions();
                    }
                    Ok(sum)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .sum()
    })
}

/// Every GC-type reduced word of the longest element of `S_{n+1}`, class by
/// class in delta order, each class in lexicographic order.
pub fn enumerate_gc_words(n: usize, budget: &Budget) -> Result<impl Iterator<Item = Word>> {
    budget.check("GC word enumeration", n)?;
    let posets = gc_posets(n)?;
    Ok(posets
        .into_iter()
        .flat_map(|(_, p)| p.words_of_class().collect::<Vec<_>>()))
}

/// `(a(n), d(n))`: GC words whose poset has `ind_A = 0`, resp. `ind_D = 0`.
pub fn gc_split(n: usize) -> Result<(BigUint, BigUint)> {
    if n < 2 {
        return Err(Error::OutOfDomain("the A/D split needs n >= 2".into()));
    }
    let (mut a, mut d) = (BigUint::zero(), BigUint::zero());
    for (delta, p) in gc_posets(n)? {
        let e = p.count_linear_extensions();
        match delta.sides().last() {
            Some(Side::A) => a += e,
            _ => d += e,
        }
    }
    Ok((a, d))
}

fn big_as_number<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    let n: serde_json::Number = v.to_string().parse().map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: usize,
    #[serde(serialize_with = "big_as_number")]
    pub gc_recurrence: BigUint,
    #[serde(serialize_with = "big_as_number")]
    pub gc_direct: BigUint,
    pub classes_gc: usize,
    /// Absent beyond the budget.
    pub classes_total: Option<usize>,
}

impl TableRow {
    pub const CSV_HEADER: &'static str = "n,gc_recurrence,gc_direct,classes_gc,classes_total";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n,
            self.gc_recurrence,
            self.gc_direct,
            self.classes_gc,
            self.classes_total.map(|c| c.to_string()).unwrap_or_default()
        )
    }
}

/// Rows `0..=n_max`. Within the budget both class counts come from the full
/// class enumeration; beyond it `classes_gc` counts distinct GC posets and
/// `classes_total` is left out.
pub fn gc_table(n_max: usize, budget: &Budget) -> Result<Vec<TableRow>> {
    let recurrence = gc_recurrence_table(n_max);
    let mut rows = Vec::with_capacity(n_max + 1);
    for (n, gc_recurrence) in recurrence.into_iter().enumerate() {
        let gc_direct = gc_direct(n)?;
        let (classes_gc, classes_total) = if n == 0 {
            (1, Some(1))
        } else if budget.allows(n) {
            let mut total = 0;
            let mut gc = 0;
            for p in commutation_classes(n) {
                total += 1;
                if classify_gc(&p)?.is_some() {
                    gc += 1;
                }
            }
            (gc, Some(total))
        } else {
            let mut keys: Vec<_> = gc_posets(n)?
                .into_iter()
                .map(|(_, p)| p.canonical_key())
                .collect();
            keys.sort();
            keys.dedup();
            (keys.len(), None)
        };
        rows.push(TableRow {
            n,
            gc_recurrence,
            gc_direct,
            classes_gc,
            classes_total,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indices::delta_index;

    fn mu(s: &str) -> StrictPartition {
        s.parse().unwrap()
    }

    fn poset(s: &str) -> WordPoset {
        WordPoset::from_word(&s.parse().unwrap()).unwrap()
    }

    const TABLE: [u64; 9] = [1, 1, 2, 6, 40, 916, 102176, 68464624, 317175051664];

    #[test]
    fn partitions() {
        assert_eq!(mu("4,3,2").to_string(), "4,3,2");
        assert!(matches!("3,3".parse::<StrictPartition>(), Err(Error::NotStrict(_))));
        assert!("2,3".parse::<StrictPartition>().is_err());
        assert!("2,0".parse::<StrictPartition>().is_err());
        assert!("".parse::<StrictPartition>().is_err());
        assert_eq!(StrictPartition::staircase(4, 2).parts(), &[4, 3]);
        let sizes: Vec<usize> = (0..=8).map(|k| StrictPartition::all_of_size(k).len()).collect();
        // Partitions into distinct parts.
        assert_eq!(sizes, [1, 1, 1, 2, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn thrall_values() {
        assert_eq!(thrall_g(&mu("3,2,1")), BigUint::from(2u32));
        assert_eq!(thrall_g(&mu("4,3")), BigUint::from(5u32));
        assert_eq!(thrall_g(&mu("4,3,2,1")), BigUint::from(12u32));
        assert_eq!(thrall_g(&mu("3")), BigUint::one());
        assert_eq!(thrall_g(&mu("9")), BigUint::one());
    }

    #[test]
    fn shifted_posets() {
        let q = shifted_poset(&mu("4,3,2")).unwrap();
        assert_eq!(q.len(), 9);
        assert_eq!(q.covers().len(), 11);
        assert_eq!(syt_count_oracle(&mu("3,2,1")).unwrap(), BigUint::from(2u32));
        assert_eq!(syt_count_oracle(&mu("1")).unwrap(), BigUint::one());
        assert_eq!(syt_count_oracle(&mu("4,3,2,1")).unwrap(), BigUint::from(12u32));
    }

    #[test]
    fn classification_of_examples() {
        let dd = classify_gc(&poset("1,2,1,3,2,1")).unwrap().unwrap();
        assert_eq!(dd.to_string(), "DD");
        assert_eq!(classify_gc(&poset("1,3,2,1,3,2")).unwrap(), None);
        assert_eq!(classify_gc(&poset("2,1,2")).unwrap().unwrap().to_string(), "A");
        assert_eq!(classify_gc(&poset("1,2,1")).unwrap().unwrap().to_string(), "D");
        assert_eq!(classify_gc(&poset("1")).unwrap().unwrap().to_string(), "");
    }

    #[test]
    fn gc_posets_of_small_deltas() {
        let dd = gc_poset_of_delta(&"DD".parse().unwrap()).unwrap();
        assert!(dd.is_isomorphic(&poset("1,2,1,3,2,1")));
        assert_eq!(gc_poset_of_delta(&DeltaSeq::default()).unwrap().len(), 1);
        for len in 0..=4 {
            for delta in DeltaSeq::all(len) {
                let p = gc_poset_of_delta(&delta).unwrap();
                assert_eq!(classify_gc(&p).unwrap().as_ref(), Some(&delta));
                assert!(delta_index(&p, &delta).unwrap().is_zero());
                assert!(p.lexmin_word().is_longest_word());
            }
        }
    }

    #[test]
    fn table_by_recurrence() {
        let table = gc_recurrence_table(8);
        let expected: Vec<BigUint> = TABLE.iter().map(|&v| BigUint::from(v)).collect();
        assert_eq!(table, expected);
    }

    #[test]
    fn table_by_linear_extensions() {
        for (n, &v) in TABLE.iter().enumerate().take(7) {
            assert_eq!(gc_direct(n).unwrap(), BigUint::from(v), "n = {n}");
        }
    }

    #[test]
    fn breakdown_of_gc4() {
        let terms: Vec<u32> = gc_recurrence_terms(4)
            .iter()
            .map(|t| t.try_into().unwrap())
            .collect();
        assert_eq!(terms, [6, 10, 12, 12]);
    }

    #[test]
    fn gc_words() {
        let words: Vec<String> = enumerate_gc_words(2, &Budget::default())
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["2,1,2", "1,2,1"]);
        assert_eq!(enumerate_gc_words(3, &Budget::default()).unwrap().count(), 6);
        let one: Vec<String> = enumerate_gc_words(1, &Budget::default())
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(one, ["1"]);
        let tight = Budget {
            limit: 2,
            unbounded: false,
        };
        assert!(matches!(enumerate_gc_words(3, &tight), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn split() {
        let as_pair = |n| {
            let (a, d) = gc_split(n).unwrap();
            (u64::try_from(a).unwrap(), u64::try_from(d).unwrap())
        };
        assert_eq!(as_pair(2), (1, 1));
        assert_eq!(as_pair(3), (3, 3));
        assert!(gc_split(1).is_err());
    }

    #[test]
    fn table_rows() {
        let rows = gc_table(5, &Budget::default()).unwrap();
        assert_eq!(rows[5].to_csv(), "5,916,916,16,908");
        assert_eq!(rows[0].to_csv(), "0,1,1,1,1");
        let json = serde_json::to_string(&rows[4]).unwrap();
        assert_eq!(
            json,
            r#"{"n":4,"gc_recurrence":40,"gc_direct":40,"classes_gc":8,"classes_total":62}"#
        );
        let beyond = gc_table(
            3,
            &Budget {
                limit: 2,
                unbounded: false,
            },
        )
        .unwrap();
        assert_eq!(beyond[3].to_csv(), "3,6,6,4,");
    }
}
