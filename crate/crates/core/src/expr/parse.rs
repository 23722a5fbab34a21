use super::{BinOp, ExprError, Func, Node};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|(_, d)| d.is_ascii_digit())) {
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i].1 == '.' {
                i += 1;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
            }
            // Exponent only when digits follow, so "2*e" keeps `e` as the constant.
            if i < chars.len() && (chars[i].1 == 'e' || chars[i].1 == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j].1 == '+' || chars[j].1 == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].1.is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let end = chars.get(i).map_or(src.len(), |(p, _)| *p);
            let text = &src[pos..end];
            let value: f64 = text.parse().map_err(|_| ExprError::Syntax {
                pos,
                msg: format!("malformed number `{text}`"),
            })?;
            if !value.is_finite() {
                return Err(ExprError::Syntax { pos, msg: format!("number `{text}` is not finite") });
            }
            out.push(Token { tok: Tok::Num(value), pos });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = pos;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let end = chars.get(i).map_or(src.len(), |(p, _)| *p);
            out.push(Token { tok: Tok::Ident(src[start..end].to_string()), pos });
            continue;
        }
        let tok = match c {
            '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(ExprError::Syntax { pos, msg: format!("unexpected character `{c}`") });
            }
        };
        out.push(Token { tok, pos });
        i += 1;
    }
    Ok(out)
}

pub(super) fn is_reserved(name: &str) -> bool {
    name == "pi" || name == "e" || Func::from_name(name).is_some()
}

pub(super) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

struct Parser<'a> {
    toks: Vec<Token>,
    at: usize,
    end: usize,
    vars: &'a [String],
}

pub(super) fn parse_node(src: &str, vars: &[String]) -> Result<Node, ExprError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(ExprError::EmptyInput);
    }
    let mut p = Parser { toks, at: 0, end: src.len(), vars };
    let node = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(ExprError::Syntax {
            pos: t.pos,
            msg: format!("unexpected {} after complete expression", describe(&t.tok)),
        });
    }
    Ok(node)
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("number {v}"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Op(c) => format!("operator `{c}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.at)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn eat_op(&mut self, ops: &[char]) -> Option<char> {
        match self.peek() {
            Some(Token { tok: Tok::Op(c), .. }) if ops.contains(c) => {
                let c = *c;
                self.at += 1;
                Some(c)
            }
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.term()?;
        while let Some(c) = self.eat_op(&['+', '-']) {
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(c) = self.eat_op(&['*', '/']) {
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ExprError> {
        match self.eat_op(&['-', '+']) {
            Some('-') => Ok(Node::Neg(Box::new(self.unary()?))),
            Some(_) => self.unary(),
            None => self.power(),
        }
    }

    // `^` binds tighter than unary minus and is right-associative; the
    // exponent may carry its own sign (`2^-1`).
    fn power(&mut self) -> Result<Node, ExprError> {
        let base = self.primary()?;
        if self.eat_op(&['^']).is_some() {
            let exp = self.unary()?;
            return Ok(Node::Binary(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node, ExprError> {
        let Some(t) = self.next() else {
            return Err(ExprError::Syntax {
                pos: self.end,
                msg: "expected operand, found end of input".into(),
            });
        };
        match t.tok {
            Tok::Num(v) => Ok(Node::Const(v)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect_rparen(t.pos)?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if let Some(func) = Func::from_name(&name) {
                    match self.next() {
                        Some(Token { tok: Tok::LParen, pos }) => {
                            let arg = self.expr()?;
                            self.expect_rparen(pos)?;
                            Ok(Node::Call(func, Box::new(arg)))
                        }
                        _ => Err(ExprError::Syntax {
                            pos: t.pos,
                            msg: format!("function `{name}` must be followed by `(`"),
                        }),
                    }
                } else if let Some(idx) = self.vars.iter().position(|v| *v == name) {
                    Ok(Node::Coord(idx))
                } else if name == "pi" {
                    Ok(Node::Const(std::f64::consts::PI))
                } else if name == "e" {
                    Ok(Node::Const(std::f64::consts::E))
                } else {
                    Err(ExprError::UnknownIdentifier { name, pos: t.pos })
                }
            }
            other => Err(ExprError::Syntax {
                pos: t.pos,
                msg: format!("expected operand, found {}", describe(&other)),
            }),
        }
    }

    fn expect_rparen(&mut self, open: usize) -> Result<(), ExprError> {
        match self.next() {
            Some(Token { tok: Tok::RParen, .. }) => Ok(()),
            Some(t) => Err(ExprError::Syntax {
                pos: t.pos,
                msg: format!("expected `)` to close `(` at {open}, found {}", describe(&t.tok)),
            }),
            None => Err(ExprError::Syntax {
                pos: self.end,
                msg: format!("unclosed `(` opened at {open}"),
            }),
        }
    }
}
