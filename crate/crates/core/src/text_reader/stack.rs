use crate::position::SourceSpan;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenElement {
    pub name: String,
    /// Span of the start tag.
    pub span: SourceSpan,
    pub depth: usize,
}

/// What closing an element by name did to the stack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CloseOutcome {
    /// The innermost open element had this name and was popped.
    Matched(OpenElement),
    /// An enclosing element had this name. It was popped together with every
    /// element opened inside it, listed innermost first in `unclosed`.
    ClosedAncestor {
        ancestor: OpenElement,
        unclosed: Vec<OpenElement>,
    },
    /// No open element has this name; the stack is unchanged. `innermost`
    /// is `None` when nothing was open at all.
    Unmatched { innermost: Option<OpenElement> },
}

/// Stack of open elements. Names compare by exact code points.
#[derive(Debug, Clone, Default)]
pub struct ElementStack {
    open: Vec<OpenElement>,
}

impl ElementStack {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn depth(&self) -> usize {
        self.open.len()
    }

    pub fn is_empty(&self) -> bool {
        self.open.is_empty()
    }

    pub fn innermost(&self) -> Option<&OpenElement> {
        self.open.last()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &OpenElement> {
        self.open.iter()
    }

    pub fn push(&mut self, name: &str, span: SourceSpan) {
        let depth = self.open.len();
        self.open.push(OpenElement {
            name: name.to_owned(),
            span,
            depth,
        });
    }

    pub fn close(&mut self, name: &str) -> CloseOutcome {
        match self.open.iter().rposition(|e| e.name == name) {
            Some(idx) if idx + 1 == self.open.len() => {
                CloseOutcome::Matched(self.open.pop().expect("nonempty"))
            }
            Some(idx) => {
                let mut unclosed = self.open.split_off(idx + 1);
                unclosed.reverse();
                let ancestor = self.open.pop().expect("ancestor present");
                CloseOutcome::ClosedAncestor { ancestor, unclosed }
            }
            None => CloseOutcome::Unmatched {
                innermost: self.open.last().cloned(),
            },
        }
    }

    /// Removes and returns every open element, innermost first.
    pub fn drain(&mut self) -> Vec<OpenElement> {
        let mut all = std::mem::take(&mut self.open);
        all.reverse();
        all
    }
}
