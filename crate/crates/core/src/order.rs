use std::cmp::Ordering;
use std::fmt;

use crate::monomial::Monomial;

/// A monomial order. Variables are ranked by their index (index 0 largest).
#[derive(Clone, PartialEq, Eq, Hash)]
#[derive(Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Compare the variables in `elim` by graded reverse lex first; break ties
    /// with `inner` on the whole monomial. Any polynomial whose leading
    /// monomial avoids `elim` lies entirely in the subring without `elim`.
    Block { elim: u32, inner: Box<MonomialOrder> },
}


impl MonomialOrder {
    pub fn block(elim: u32, inner: MonomialOrder) -> Self {
        MonomialOrder::Block { elim, inner: Box::new(inner) }
    }

    /// Elimination order for `elim` with grevlex inside each block.
    pub fn elimination(elim: u32) -> Self {
        Self::block(elim, MonomialOrder::Grevlex)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.cmp_grevlex(b),
            MonomialOrder::Lex => a.cmp_lex(b),
            MonomialOrder::Block { elim, inner } => match a.cmp_grevlex_masked(b, *elim) {
                Ordering::Equal => inner.cmp(a, b),
                o => o,
            },
        }
    }

    /// True when the order refines total degree (needed for the sugar-free
    /// degree-by-degree strategy to be exact).
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Block { elim, inner } => write!(f, "block({elim:#b}, {inner:?})"),
        }
    }
}
