//! Expression parser shared by ring elements, relation polynomials and skew
//! polynomials.
//!
//! Grammar: sums and differences of products; products may be written with
//! `*` or by juxtaposition (`2x`, `α^2x`, `xy`); atoms are unsigned
//! integers, names (longest match wins), parenthesised expressions and
//! bracketed literals such as `[[1,0],[0,1]]`. `^` takes an unsigned integer
//! exponent.

pub trait ExprDomain {
    type Value: Clone;

    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    /// The longest known name that prefixes `rest`, as (length in chars, value).
    fn name_prefix(&self, rest: &[char]) -> Option<(usize, Self::Value)>;

    fn bracket_literal(&self, _text: &str) -> Option<Self::Value> {
        None
    }
}

/// Longest-prefix lookup over a name table.
pub fn longest_name<'a, V: Clone + 'a>(
    names: impl IntoIterator<Item = (&'a str, &'a V)>,
    rest: &[char],
) -> Option<(usize, V)> {
    let mut best: Option<(usize, V)> = None;
    for (name, value) in names {
        let len = name.chars().count();
        if len == 0 || len > rest.len() || best.as_ref().is_some_and(|b| b.0 >= len) {
            continue;
        }
        if name.chars().zip(rest).all(|(a, &b)| a == b) {
            best = Some((len, value.clone()));
        }
    }
    best
}

pub fn parse_expr<D: ExprDomain>(dom: &D, input: &str) -> Result<D::Value, String> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser {
        dom,
        s: &chars,
        pos: 0,
    };
    let v = p.expr()?;
    if p.pos != chars.len() {
        return Err(format!(
            "unexpected '{}' at position {}",
            chars[p.pos], p.pos
        ));
    }
    Ok(v)
}

struct Parser<'a, D: ExprDomain> {
    dom: &'a D,
    s: &'a [char],
    pos: usize,
}

impl<D: ExprDomain> Parser<'_, D> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<D::Value, String> {
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                negate = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = self.dom.neg(&acc);
        }
        while let Some(c) = self.peek() {
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' {
                self.dom.add(&acc, &t)
            } else {
                self.dom.add(&acc, &self.dom.neg(&t))
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<D::Value, String> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                }
                Some(c) if starts_atom(c) => {}
                _ => break,
            }
            let f = self.power()?;
            acc = self.dom.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<D::Value, String> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.uint().ok_or_else(|| format!("exponent expected at {}", self.pos))?;
            return Ok(self.pow(&base, e));
        }
        Ok(base)
    }

    fn pow(&self, base: &D::Value, mut e: u64) -> D::Value {
        let mut acc = self.dom.one();
        let mut b = base.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.dom.mul(&acc, &b);
            }
            b = self.dom.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    fn uint(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.s[start..self.pos].iter().collect::<String>().parse().ok()
    }

    fn integer(&self, mut k: u64) -> D::Value {
        let mut acc = self.dom.zero();
        let mut b = self.dom.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.dom.add(&acc, &b);
            }
            b = self.dom.add(&b, &b);
            k >>= 1;
        }
        acc
    }

    fn atom(&mut self) -> Result<D::Value, String> {
        match self.peek() {
            None => Err("unexpected end of expression".into()),
            Some(c) if c.is_ascii_digit() => {
                let k = self.uint().ok_or("integer too large")?;
                Ok(self.integer(k))
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(format!("')' expected at {}", self.pos));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('[') => {
                let start = self.pos;
                let mut depth = 0usize;
                while let Some(c) = self.peek() {
                    self.pos += 1;
                    if c == '[' {
                        depth += 1;
                    } else if c == ']' {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                }
                if depth != 0 {
                    return Err("unbalanced '['".into());
                }
                let text: String = self.s[start..self.pos].iter().collect();
                self.dom
                    .bracket_literal(&text)
                    .ok_or_else(|| format!("unknown literal {text}"))
            }
            Some(_) => match self.dom.name_prefix(&self.s[self.pos..]) {
                Some((len, v)) => {
                    self.pos += len;
                    Ok(v)
                }
                None => Err(format!(
                    "unknown name at '{}'",
                    self.s[self.pos..].iter().collect::<String>()
                )),
            },
        }
    }
}

fn starts_atom(c: char) -> bool {
    c.is_alphanumeric() || c == '(' || c == '[' || c == '_'
}
