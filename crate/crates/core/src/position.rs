//! Line/column positions and spans over a source text.
//!
//! Lines and columns are 1-based. Columns count Unicode scalar values, a tab
//! is one column, and LF, CRLF and a lone CR each end exactly one line.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SourcePosition {
    pub line: usize,
    pub column: usize,
    /// Byte offset into the source string.
    pub offset: usize,
}

impl SourcePosition {
    pub const START: SourcePosition = SourcePosition {
        line: 1,
        column: 1,
        offset: 0,
    };

    pub fn new(line: usize, column: usize, offset: usize) -> Self {
        debug_assert!(line >= 1 && column >= 1);
        Self {
            line,
            column,
            offset,
        }
    }

    pub fn line_col(&self) -> (usize, usize) {
        (self.line, self.column)
    }
}

impl Default for SourcePosition {
    fn default() -> Self {
        Self::START
    }
}

impl fmt::Display for SourcePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub start: SourcePosition,
    pub end: Option<SourcePosition>,
}

impl SourceSpan {
    pub fn new(start: SourcePosition, end: SourcePosition) -> Self {
        debug_assert!(end >= start);
        Self {
            start,
            end: Some(end),
        }
    }

    pub fn point(start: SourcePosition) -> Self {
        Self { start, end: None }
    }
}

impl From<SourcePosition> for SourceSpan {
    fn from(start: SourcePosition) -> Self {
        Self::point(start)
    }
}

/// Incremental position counter. Feed it every character of the source in
/// order and it reports where the next character sits.
#[derive(Debug, Clone, Copy, Default)]
pub struct LineCounter {
    position: SourcePosition,
    after_cr: bool,
}

impl LineCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// A counter resuming at `position`, which must not directly follow a CR.
    pub fn at(position: SourcePosition) -> Self {
        Self {
            position,
            after_cr: false,
        }
    }

    pub fn position(&self) -> SourcePosition {
        self.position
    }

    pub fn advance(&mut self, ch: char) {
        let pos = &mut self.position;
        pos.offset += ch.len_utf8();
        match ch {
            '\r' => {
                pos.line += 1;
                pos.column = 1;
                self.after_cr = true;
                return;
            }
            // the CR already ended the line
            '\n' if self.after_cr => {}
            '\n' => {
                pos.line += 1;
                pos.column = 1;
            }
            _ => pos.column += 1,
        }
        self.after_cr = false;
    }

    pub fn advance_str(&mut self, s: &str) {
        s.chars().for_each(|c| self.advance(c));
    }
}

/// Position of the byte offset `offset` within `source`.
pub fn position_of(source: &str, offset: usize) -> SourcePosition {
    let mut counter = LineCounter::new();
    counter.advance_str(&source[..offset]);
    counter.position()
}
