use std::fmt;

/// One axis of a box literal.
#[derive(Clone, Debug, PartialEq)]
pub enum IntervalLit {
    /// `{a}`
    Point(f64),
    /// `[a,b]`, `(a,b)`, `[a,b)`, `(a,b]`; bounds may be infinite.
    Range {
        lo: f64,
        hi: f64,
        lo_closed: bool,
        hi_closed: bool,
    },
}

/// Abstract syntax of a set expression.
#[derive(Clone, Debug, PartialEq)]
pub enum SetExpr {
    Box(Vec<IntervalLit>),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersect(Box<SetExpr>, Box<SetExpr>),
    Difference(Box<SetExpr>, Box<SetExpr>),
    Complement(Box<SetExpr>),
    Product(Box<SetExpr>, Box<SetExpr>),
    Translate(Box<SetExpr>, Vec<f64>),
    Scale(Box<SetExpr>, f64),
    Permute(Box<SetExpr>, Vec<usize>),
    Reflect(Box<SetExpr>, usize),
    Name(String),
}

struct Num(f64);

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            f.write_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            f.write_str("-inf")
        } else {
            // Debug keeps the exponent form for very large or small values
            // and round-trips exactly.
            write!(f, "{:?}", self.0)
        }
    }
}

impl fmt::Display for IntervalLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IntervalLit::Point(a) => write!(f, "{{{}}}", Num(a)),
            IntervalLit::Range {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => write!(
                f,
                "{}{},{}{}",
                if lo_closed { '[' } else { '(' },
                Num(lo),
                Num(hi),
                if hi_closed { ']' } else { ')' }
            ),
        }
    }
}

impl fmt::Display for SetExpr {
    /// Fully parenthesized form; parsing it back gives the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, xs: &mut dyn Iterator<Item = String>| {
            for x in xs {
                write!(f, ", {}", x)?;
            }
            Ok(())
        };
        match self {
            SetExpr::Box(ivs) => {
                for (i, iv) in ivs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", iv)?;
                }
                Ok(())
            }
            SetExpr::Union(a, b) => write!(f, "({} | {})", a, b),
            SetExpr::Intersect(a, b) => write!(f, "({} & {})", a, b),
            SetExpr::Difference(a, b) => write!(f, "({} \\ {})", a, b),
            SetExpr::Product(a, b) => write!(f, "({} x {})", a, b),
            SetExpr::Complement(a) => write!(f, "!({})", a),
            SetExpr::Translate(a, v) => {
                write!(f, "translate({}", a)?;
                list(f, &mut v.iter().map(|x| Num(*x).to_string()))?;
                f.write_str(")")
            }
            SetExpr::Scale(a, b) => write!(f, "scale({}, {})", a, Num(*b)),
            SetExpr::Permute(a, p) => {
                write!(f, "permute({}", a)?;
                list(f, &mut p.iter().map(|x| x.to_string()))?;
                f.write_str(")")
            }
            SetExpr::Reflect(a, axis) => write!(f, "reflect({}, {})", a, axis),
            SetExpr::Name(n) => f.write_str(n),
        }
    }
}
