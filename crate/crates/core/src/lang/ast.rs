//! Method-body syntax trees.

use super::diag::Pos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Assign {
        target: String,
        value: Expr,
        pos: Pos,
    },
    Expr(Expr),
}

impl Stmt {
    pub fn pos(&self) -> Pos {
        match self {
            Stmt::Assign { pos, .. } => *pos,
            Stmt::Expr(e) => e.pos,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    SelfRef,
    /// Only ever the receiver of a [`ExprKind::Send`].
    SuperRef,
    Name(String),
    Number(String),
    Str(String),
    Send {
        receiver: Box<Expr>,
        selector: String,
        args: Vec<Expr>,
    },
    Paren(Box<Expr>),
}

impl Expr {
    /// Pre-order walk over this expression and all nested ones.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Expr)) {
        visit(self);
        match &self.kind {
            ExprKind::Send { receiver, args, .. } => {
                receiver.walk(visit);
                for a in args {
                    a.walk(visit);
                }
            }
            ExprKind::Paren(inner) => inner.walk(visit),
            _ => {}
        }
    }
}
