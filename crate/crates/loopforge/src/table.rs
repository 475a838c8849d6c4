//! Cayley tables of finite loops: validation, translations, principal
//! isotopes, and the line-oriented text format.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Axis, Error, Result};
use crate::perm::{strip_comment, MappingTriple, Permutation};

/// Which translation family an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// The Cayley table of a finite loop on labels `0..order`.
///
/// Validation guarantees that every row and column is a permutation of
/// the labels (a Latin square) and that some label is a two-sided
/// identity. Rows index the left factor: `table[x][y] = x * y`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopTable {
    order: usize,
    cells: Vec<usize>,
    identity: usize,
}

impl LoopTable {
    /// Validates a square array as a loop table.
    ///
    /// Checks, in order: squareness, entry ranges, the Latin property on
    /// rows and columns, and the existence of a two-sided identity.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::NoIdentity);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotSquare {
                    row: i,
                    len: row.len(),
                    order,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        order,
                    });
                }
            }
        }
        for (i, row) in rows.iter().enumerate() {
            let mut seen = vec![false; order];
            for &v in row {
                if seen[v] {
                    return Err(Error::NotLatin {
                        axis: Axis::Row,
                        index: i,
                        value: v,
                    });
                }
                seen[v] = true;
            }
        }
        for j in 0..order {
            let mut seen = vec![false; order];
            for row in &rows {
                let v = row[j];
                if seen[v] {
                    return Err(Error::NotLatin {
                        axis: Axis::Column,
                        index: j,
                        value: v,
                    });
                }
                seen[v] = true;
            }
        }
        let identity = (0..order)
            .find(|&e| {
                (0..order).all(|y| rows[e][y] == y) && (0..order).all(|x| rows[x][e] == x)
            })
            .ok_or(Error::NoIdentity)?;

        let mut cells = Vec::with_capacity(order * order);
        for row in rows {
            cells.extend(row);
        }
        Ok(LoopTable {
            order,
            cells,
            identity,
        })
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.order
    }

    /// The two-sided identity label.
    pub fn identity(&self) -> usize {
        self.identity
    }

    /// The product `x * y`.
    ///
    /// # Panics
    /// Panics if a label is out of range; labels always come from the
    /// table's own range after validation.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        assert!(x < self.order && y < self.order, "label out of range");
        self.cells[x * self.order + y]
    }

    /// Row views of the table.
    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.order)
    }

    fn check_label(&self, label: usize) -> Result<()> {
        if label < self.order {
            Ok(())
        } else {
            Err(Error::LabelOutOfRange {
                label,
                order: self.order,
            })
        }
    }

    /// The left translation by `x`: the permutation sending `y` to `x * y`
    /// (row `x` of the table).
    pub fn left_translation(&self, x: usize) -> Result<Permutation> {
        self.check_label(x)?;
        let images = self.cells[x * self.order..(x + 1) * self.order].to_vec();
        Ok(Permutation::from_images(images).expect("rows of a Latin square are permutations"))
    }

    /// The right translation by `x`: the permutation sending `y` to `y * x`
    /// (column `x` of the table).
    pub fn right_translation(&self, x: usize) -> Result<Permutation> {
        self.check_label(x)?;
        let images = (0..self.order).map(|y| self.mul(y, x)).collect();
        Ok(Permutation::from_images(images).expect("columns of a Latin square are permutations"))
    }

    /// Left or right translation, chosen by `side`.
    pub fn translation(&self, side: Side, x: usize) -> Result<Permutation> {
        match side {
            Side::Left => self.left_translation(x),
            Side::Right => self.right_translation(x),
        }
    }

    /// Whether the operation is associative (so the loop is a group).
    pub fn is_associative(&self) -> bool {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether the operation is commutative.
    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (x + 1..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Relabels every element through the permutation `sigma`, producing
    /// the isomorphic copy with `sigma(x) * sigma(y) = sigma(x * y)`.
    pub fn relabeled(&self, sigma: &Permutation) -> Result<LoopTable> {
        if sigma.degree() != self.order {
            return Err(Error::DegreeMismatch {
                left: self.order,
                right: sigma.degree(),
            });
        }
        let inv = sigma.inverse();
        let rows = (0..self.order)
            .map(|i| {
                (0..self.order)
                    .map(|j| sigma.apply(self.mul(inv.apply(i), inv.apply(j))))
                    .collect()
            })
            .collect();
        LoopTable::from_rows(rows)
    }

    /// The same loop relabeled so its identity element is `0`, by swapping
    /// the identity label with `0`. A loop whose identity is already `0`
    /// comes back unchanged.
    pub fn normalized(&self) -> LoopTable {
        if self.identity == 0 {
            return self.clone();
        }
        let mut images: Vec<usize> = (0..self.order).collect();
        images.swap(0, self.identity);
        let sigma = Permutation::from_images(images).expect("a transposition is a permutation");
        self.relabeled(&sigma)
            .expect("relabeling a valid loop yields a valid loop")
    }

    /// The principal isotope with operation `x . y = (x / g) * (f \ y)`,
    /// where `/ g` undoes the right translation by `g` and `f \` undoes
    /// the left translation by `f`.
    ///
    /// Returns the isotope together with the triple `(R_g, L_f, id)`,
    /// which carries the original loop onto it; the isotope's identity
    /// element is `f * g`.
    pub fn principal_isotope(&self, f: usize, g: usize) -> Result<(LoopTable, MappingTriple)> {
        self.check_label(f)?;
        self.check_label(g)?;
        let r_g = self.right_translation(g)?;
        let l_f = self.left_translation(f)?;
        let r_g_inv = r_g.inverse();
        let l_f_inv = l_f.inverse();
        let rows = (0..self.order)
            .map(|x| {
                (0..self.order)
                    .map(|y| self.mul(r_g_inv.apply(x), l_f_inv.apply(y)))
                    .collect()
            })
            .collect();
        let isotope = LoopTable::from_rows(rows)
            .expect("a principal isotope of a loop is a loop");
        debug_assert_eq!(isotope.identity(), self.mul(f, g));
        let triple = MappingTriple::new(r_g, l_f, Permutation::identity(self.order))
            .expect("translations of one table share a degree");
        Ok((isotope, triple))
    }

    /// Parses a single table in the text format; trailing content after
    /// one complete table is an error.
    pub fn parse_str(src: &str) -> Result<LoopTable> {
        let mut parser = TableParser::new(src);
        let table = parser.next_table()?.ok_or(Error::Parse {
            line: parser.line,
            message: "expected a table, found no content".into(),
        })?;
        if let Some(line) = parser.peek_content_line() {
            return Err(Error::Parse {
                line,
                message: "unexpected content after the table".into(),
            });
        }
        Ok(table)
    }

    /// Parses a stream of tables in the text format.
    pub fn parse_tables(src: &str) -> Result<Vec<LoopTable>> {
        let mut parser = TableParser::new(src);
        let mut tables = Vec::new();
        while let Some(table) = parser.next_table()? {
            tables.push(table);
        }
        Ok(tables)
    }
}

impl fmt::Display for LoopTable {
    /// The text format: an order line, the rows, and an explicit
    /// `identity` line. `parse_str` round-trips this output.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for row in self.rows() {
            let mut first = true;
            for v in row {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
            writeln!(f)?;
        }
        writeln!(f, "identity {}", self.identity)
    }
}

impl Serialize for LoopTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LoopTable", 3)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("rows", &self.rows().collect::<Vec<_>>())?;
        s.serialize_field("identity", &self.identity)?;
        s.end()
    }
}

/// Line-oriented parser for the table text format.
///
/// A table is an order line `n`, then `n` rows of `n` labels, then an
/// optional `identity k` line, which is checked against the identity
/// detected from the table itself. Blank lines and `#` comments may
/// appear anywhere between tokens.
struct TableParser<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
    /// 1-based number of the last line handed out.
    line: usize,
    peeked: Option<(usize, &'a str)>,
}

impl<'a> TableParser<'a> {
    fn new(src: &'a str) -> Self {
        TableParser {
            lines: src.lines().enumerate(),
            line: 0,
            peeked: None,
        }
    }

    /// Next non-blank, non-comment line, with its 1-based line number.
    fn next_content_line(&mut self) -> Option<(usize, &'a str)> {
        if let Some(found) = self.peeked.take() {
            return Some(found);
        }
        for (idx, raw) in self.lines.by_ref() {
            self.line = idx + 1;
            let line = strip_comment(raw);
            if !line.is_empty() {
                return Some((idx + 1, line));
            }
        }
        None
    }

    fn peek_content_line(&mut self) -> Option<usize> {
        if self.peeked.is_none() {
            self.peeked = self.next_content_line();
        }
        self.peeked.as_ref().map(|&(no, _)| no)
    }

    fn next_table(&mut self) -> Result<Option<LoopTable>> {
        let Some((no, header)) = self.next_content_line() else {
            return Ok(None);
        };
        let order: usize = header.trim().parse().map_err(|_| Error::Parse {
            line: no,
            message: format!("expected a table order, found `{header}`"),
        })?;
        if order == 0 {
            return Err(Error::Parse {
                line: no,
                message: "table order must be at least 1".into(),
            });
        }
        let mut rows = Vec::with_capacity(order);
        for _ in 0..order {
            let (no, line) = self.next_content_line().ok_or(Error::Parse {
                line: self.line,
                message: format!("expected {order} table rows, input ended early"),
            })?;
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        line: no,
                        message: format!("`{tok}` is not a nonnegative integer"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != order {
                return Err(Error::Parse {
                    line: no,
                    message: format!("expected {order} entries in this row, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        let row_line = self.line;
        let table = LoopTable::from_rows(rows).map_err(|e| Error::Parse {
            line: row_line,
            message: e.to_string(),
        })?;

        // An optional `identity k` trailer is verified, not trusted.
        if let Some((no, line)) = self.next_content_line() {
            if let Some(rest) = line.strip_prefix("identity") {
                let declared: usize = rest.trim().parse().map_err(|_| Error::Parse {
                    line: no,
                    message: format!("expected a label after `identity`, found `{}`", rest.trim()),
                })?;
                if declared != table.identity() {
                    return Err(Error::Parse {
                        line: no,
                        message: format!(
                            "declared identity {declared} but the table's identity is {}",
                            table.identity()
                        ),
                    });
                }
            } else {
                self.peeked = Some((no, line));
            }
        }
        Ok(Some(table))
    }
}
