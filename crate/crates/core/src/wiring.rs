//! Wiring diagrams of words, traced by simulation.
//!
//! Rows are numbered from 1 at the top; row `r` holds a single crossing in
//! column `i_r`, which swaps the wires at positions `i_r` and `i_r + 1`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poset::WordPoset;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WiringDiagram {
    rank: usize,
    rows: Vec<u8>,
    /// Rows (1-based) of the crossings met by each wire, top to bottom.
    /// Index 0 is unused.
    wire_rows: Vec<Vec<usize>>,
    /// The two wires meeting at each row, left to right before the swap.
    row_wires: Vec<(usize, usize)>,
    /// Ending point of each wire; index 0 is unused.
    endpoints: Vec<usize>,
}

impl WiringDiagram {
    pub fn from_word(word: &Word) -> Self {
        let n = word.rank();
        let mut at: Vec<usize> = (0..=n + 1).collect();
        let mut wire_rows = vec![Vec::new(); n + 2];
        let mut row_wires = Vec::with_capacity(word.len());
        for (k, &c) in word.letters().iter().enumerate() {
            let c = c as usize;
            let (left, right) = (at[c], at[c + 1]);
            wire_rows[left].push(k + 1);
            wire_rows[right].push(k + 1);
            row_wires.push((left, right));
            at.swap(c, c + 1);
        }
        let mut endpoints = vec![0; n + 2];
        for (p, &wire) in at.iter().enumerate().skip(1) {
            endpoints[wire] = p;
        }
        WiringDiagram {
            rank: n,
            rows: word.letters().to_vec(),
            wire_rows,
            row_wires,
            endpoints,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn wire_count(&self) -> usize {
        self.rank + 1
    }

    /// Crossing column of each row.
    pub fn rows(&self) -> &[u8] {
        &self.rows
    }

    /// Rows of the crossings on wire `j` (1-based), top to bottom.
    pub fn wire_rows(&self, wire: usize) -> &[usize] {
        &self.wire_rows[wire]
    }

    pub fn endpoint(&self, wire: usize) -> usize {
        self.endpoints[wire]
    }

    /// The pair of wires crossing in 1-based `row`.
    pub fn wires_at(&self, row: usize) -> (usize, usize) {
        self.row_wires[row - 1]
    }

    /// Number of crossings shared by wires `a` and `b`.
    pub fn meetings(&self, a: usize, b: usize) -> usize {
        self.row_wires
            .iter()
            .filter(|&&(l, r)| (l, r) == (a, b) || (l, r) == (b, a))
            .count()
    }

    /// Word poset on the crossings: `a < b` iff a downward path along wires
    /// leads from crossing `a` to crossing `b`.
    pub fn poset(&self) -> Result<WordPoset> {
        let mut relations = Vec::new();
        for rows in self.wire_rows.iter().skip(1) {
            for pair in rows.windows(2) {
                relations.push((pair[0] - 1, pair[1] - 1));
            }
        }
        WordPoset::from_relations(self.rank, self.rows.clone(), &relations)
    }

    /// One line per row: `|` for a passing wire, `X` for the crossing. The
    /// first and last lines list the wire labels at the starting and ending
    /// points.
    pub fn render_ascii(&self) -> String {
        let m = self.wire_count();
        let mut s = String::new();
        let labels: Vec<String> = (1..=m).map(|j| j.to_string()).collect();
        let _ = writeln!(s, "{}", labels.join(" "));
        for (k, &c) in self.rows.iter().enumerate() {
            let c = c as usize;
            let mut line = vec![' '; 2 * m - 1];
            for p in 1..=m {
                if p != c && p != c + 1 {
                    line[2 * (p - 1)] = '|';
                }
            }
            line[2 * c - 1] = 'X';
            let line: String = line.into_iter().collect();
            let _ = writeln!(s, "{line}  t{}", k + 1);
        }
        let mut ending = vec![0; m + 1];
        for wire in 1..=m {
            ending[self.endpoints[wire]] = wire;
        }
        let ending: Vec<String> = ending[1..].iter().map(|w| w.to_string()).collect();
        let _ = writeln!(s, "{}", ending.join(" "));
        s
    }

    /// Graphviz rendering: crossing `t_r` is pinned at (column, -row), one
    /// subgraph per row, and edges follow the wires.
    pub fn render_dot(&self) -> String {
        let m = self.wire_count();
        let bottom = self.rows.len() + 1;
        let mut s = String::new();
        s.push_str("digraph wiring {\n");
        s.push_str("  node [shape=circle, fontsize=10];\n");
        for j in 1..=m {
            let _ = writeln!(s, "  a{j} [label=\"{j}\", shape=plaintext, pos=\"{j},0!\"];");
        }
        for (k, &c) in self.rows.iter().enumerate() {
            let r = k + 1;
            let _ = writeln!(s, "  subgraph row{r} {{");
            s.push_str("    rank=same;\n");
            let _ = writeln!(
                s,
                "    t{r} [label=\"t{r}\", pos=\"{x},-{r}!\"];",
                x = c as f64 + 0.5
            );
            s.push_str("  }\n");
        }
        for j in 1..=m {
            let _ = writeln!(
                s,
                "  b{j} [label=\"{j}\", shape=plaintext, pos=\"{j},-{bottom}!\"];"
            );
        }
        for wire in 1..=m {
            let mut prev = format!("a{wire}");
            for &r in &self.wire_rows[wire] {
                let _ = writeln!(s, "  {prev} -> t{r} [label=\"{wire}\"];");
                prev = format!("t{r}");
            }
            let _ = writeln!(s, "  {prev} -> b{} [label=\"{wire}\"];", self.endpoints[wire]);
        }
        s.push_str("}\n");
        s
    }
}

/// Rows of the crossings on the first wire (columns 1, 2, ..., n) and on the
/// last wire (columns n, ..., 1) of a reduced word of the longest element.
pub fn chains_from_wires(word: &Word) -> Result<(Vec<usize>, Vec<usize>)> {
    if !word.is_longest_word() {
        return Err(Error::NotLongest(word.to_string()));
    }
    let d = WiringDiagram::from_word(word);
    let ascending = d.wire_rows(1).to_vec();
    let descending = d.wire_rows(d.wire_count()).to_vec();
    Ok((ascending, descending))
}
