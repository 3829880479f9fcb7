use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::ChiralityError;

/// Declared facts about a knot used as a building block.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AtomDecl {
    pub trivial: bool,
    pub prime: bool,
    /// Signs `e` with `K* = eK`; `None` when unknown.
    pub achiral: Option<Vec<i32>>,
}

impl AtomDecl {
    pub fn chiral_prime() -> Self {
        Self {
            trivial: false,
            prime: true,
            achiral: Some(Vec::new()),
        }
    }

    pub fn achiral_prime(signs: &[i32]) -> Self {
        Self {
            trivial: false,
            prime: true,
            achiral: Some(signs.to_vec()),
        }
    }

    pub fn unknot() -> Self {
        Self {
            trivial: true,
            prime: false,
            achiral: Some(vec![1, -1]),
        }
    }
}

/// Declaration `mirror(left) = sign * right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub left: String,
    pub sign: i32,
    pub right: String,
}

/// Atom declarations supplied from outside an expression.
pub type Declarations = BTreeMap<String, AtomDecl>;

/// A link built from declared knots by satellite operations. The `on`
/// field picks the component replaced by the pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatelliteExpr {
    Unknot,
    Hopf,
    /// Bing double of one component of the Hopf link.
    Borromean,
    Atom {
        name: String,
        decl: Option<AtomDecl>,
    },
    BingDouble {
        r: i64,
        on: usize,
        inner: Box<SatelliteExpr>,
    },
    WheadDouble {
        r: i64,
        on: usize,
        inner: Box<SatelliteExpr>,
    },
    Cable {
        p: i64,
        q: i64,
        on: usize,
        inner: Box<SatelliteExpr>,
    },
    ConnectedSum {
        factors: Vec<SatelliteExpr>,
        relations: Vec<Relation>,
    },
}

impl SatelliteExpr {
    pub fn atom(name: &str) -> Self {
        SatelliteExpr::Atom {
            name: name.to_string(),
            decl: None,
        }
    }

    pub fn declared(name: &str, decl: AtomDecl) -> Self {
        SatelliteExpr::Atom {
            name: name.to_string(),
            decl: Some(decl),
        }
    }

    pub fn bing(r: i64, on: usize, inner: SatelliteExpr) -> Self {
        SatelliteExpr::BingDouble {
            r,
            on,
            inner: Box::new(inner),
        }
    }

    pub fn whitehead(r: i64, on: usize, inner: SatelliteExpr) -> Self {
        SatelliteExpr::WheadDouble {
            r,
            on,
            inner: Box::new(inner),
        }
    }

    pub fn cable(p: i64, q: i64, on: usize, inner: SatelliteExpr) -> Self {
        SatelliteExpr::Cable {
            p,
            q,
            on,
            inner: Box::new(inner),
        }
    }

    /// Number of Bing doublings in the tree, counting the one hidden in
    /// `Borromean`.
    pub fn bing_count(&self) -> usize {
        match self {
            SatelliteExpr::Unknot | SatelliteExpr::Hopf | SatelliteExpr::Atom { .. } => 0,
            SatelliteExpr::Borromean => 1,
            SatelliteExpr::BingDouble { inner, .. } => 1 + inner.bing_count(),
            SatelliteExpr::WheadDouble { inner, .. } | SatelliteExpr::Cable { inner, .. } => inner.bing_count(),
            SatelliteExpr::ConnectedSum { factors, .. } => factors.iter().map(|f| f.bing_count()).sum(),
        }
    }
}

fn signs_text(signs: &[i32]) -> String {
    if signs.is_empty() {
        return "none".into();
    }
    signs
        .iter()
        .map(|&s| if s > 0 { "+" } else { "-" })
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for AtomDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.trivial {
            parts.push("trivial".to_string());
        } else if !self.prime {
            parts.push("composite".to_string());
        }
        match &self.achiral {
            Some(s) => parts.push(format!("achiral={}", signs_text(s))),
            None => parts.push("achiral=?".to_string()),
        }
        f.write_str(&parts.join(", "))
    }
}

impl fmt::Display for SatelliteExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let on = |on: &usize| if *on == 0 { String::new() } else { format!("on={on}, ") };
        match self {
            SatelliteExpr::Unknot => f.write_str("Unknot"),
            SatelliteExpr::Hopf => f.write_str("Hopf"),
            SatelliteExpr::Borromean => f.write_str("Borromean"),
            SatelliteExpr::Atom { name, decl: None } => write!(f, "atom({name})"),
            SatelliteExpr::Atom { name, decl: Some(d) } => write!(f, "atom({name}, {d})"),
            SatelliteExpr::BingDouble { r, on: o, inner } => write!(f, "Bing(r={r}, {}{inner})", on(o)),
            SatelliteExpr::WheadDouble { r, on: o, inner } => write!(f, "WDouble(r={r}, {}{inner})", on(o)),
            SatelliteExpr::Cable { p, q, on: o, inner } => write!(f, "Cable(p={p}, q={q}, {}{inner})", on(o)),
            SatelliteExpr::ConnectedSum { factors, relations } => {
                let fs: Vec<String> = factors.iter().map(|x| x.to_string()).collect();
                write!(f, "Sum({}", fs.join(", "))?;
                if !relations.is_empty() {
                    let rs: Vec<String> = relations
                        .iter()
                        .map(|r| format!("mirror({})={}{}", r.left, if r.sign < 0 { "-" } else { "" }, r.right))
                        .collect();
                    write!(f, "; rel: {}", rs.join(", "))?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ChiralityError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let v = s[start..i].parse().map_err(|_| ChiralityError::Parse {
                pos: start,
                msg: "integer too large".into(),
            })?;
            out.push((start, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_' || b[i] == b'\'') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "(),=;:+-?".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ChiralityError::Parse {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

impl Parser {
    fn new(s: &str) -> Result<Self, ChiralityError> {
        Ok(Self {
            toks: tokenize(s)?,
            i: 0,
            end: s.len(),
        })
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ChiralityError> {
        Err(ChiralityError::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.i + k).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ChiralityError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<String, ChiralityError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.i += 1;
                Ok(s)
            }
            _ => self.err("expected a name"),
        }
    }

    fn int(&mut self) -> Result<i64, ChiralityError> {
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.i += 1;
                Ok(if neg { -v } else { v })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn done(&self) -> Result<(), ChiralityError> {
        if self.i == self.toks.len() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }

    /// True when the next tokens are `name =`.
    fn at_key(&self, key: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == key) && self.peek_at(1) == Some(&Tok::Sym('='))
    }

    /// Leading `key=INT,` arguments in any order, restricted to `allowed`.
    fn keys(&mut self, allowed: &[&str]) -> Result<BTreeMap<String, i64>, ChiralityError> {
        let mut out = BTreeMap::new();
        while let Some(k) = allowed.iter().find(|k| self.at_key(k)) {
            let k = k.to_string();
            self.i += 2;
            let v = self.int()?;
            if out.insert(k.clone(), v).is_some() {
                return self.err(format!("`{k}` given twice"));
            }
            self.expect(',')?;
        }
        Ok(out)
    }

    fn on(&self, keys: &BTreeMap<String, i64>) -> Result<usize, ChiralityError> {
        match keys.get("on") {
            None => Ok(0),
            Some(&v) if v >= 0 => Ok(v as usize),
            Some(_) => self.err("`on` must be non-negative"),
        }
    }

    fn expr(&mut self) -> Result<SatelliteExpr, ChiralityError> {
        let head = self.ident()?;
        match head.as_str() {
            "Unknot" | "unknot" => Ok(SatelliteExpr::Unknot),
            "Hopf" | "hopf" => Ok(SatelliteExpr::Hopf),
            "Borromean" | "borromean" => Ok(SatelliteExpr::Borromean),
            "atom" => {
                self.expect('(')?;
                let name = self.ident()?;
                let decl = if self.eat(',') { Some(self.decl_attrs()?) } else { None };
                self.expect(')')?;
                Ok(SatelliteExpr::Atom { name, decl })
            }
            "Bing" | "WDouble" => {
                self.expect('(')?;
                let keys = self.keys(&["r", "on"])?;
                let on = self.on(&keys)?;
                let r = keys.get("r").copied().unwrap_or(0);
                let inner = Box::new(self.expr()?);
                self.expect(')')?;
                Ok(if head == "Bing" {
                    SatelliteExpr::BingDouble { r, on, inner }
                } else {
                    SatelliteExpr::WheadDouble { r, on, inner }
                })
            }
            "Cable" => {
                self.expect('(')?;
                let keys = self.keys(&["p", "q", "on"])?;
                let on = self.on(&keys)?;
                let (Some(&p), Some(&q)) = (keys.get("p"), keys.get("q")) else {
                    return self.err("Cable needs p= and q=");
                };
                let inner = Box::new(self.expr()?);
                self.expect(')')?;
                Ok(SatelliteExpr::Cable { p, q, on, inner })
            }
            "Sum" => {
                self.expect('(')?;
                let mut factors = vec![self.expr()?];
                while self.eat(',') {
                    factors.push(self.expr()?);
                }
                let mut relations = Vec::new();
                if self.eat(';') {
                    if self.ident()? != "rel" {
                        return self.err("expected `rel:`");
                    }
                    self.expect(':')?;
                    relations.push(self.relation()?);
                    while self.eat(',') {
                        relations.push(self.relation()?);
                    }
                }
                self.expect(')')?;
                Ok(SatelliteExpr::ConnectedSum { factors, relations })
            }
            other => self.err(format!("unknown constructor `{other}`")),
        }
    }

    fn relation(&mut self) -> Result<Relation, ChiralityError> {
        if self.ident()? != "mirror" {
            return self.err("expected `mirror(...)`");
        }
        self.expect('(')?;
        let left = self.ident()?;
        self.expect(')')?;
        self.expect('=')?;
        let sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        let right = self.ident()?;
        Ok(Relation { left, sign, right })
    }

    /// Attributes after an atom name: `trivial`, `prime`, `composite`,
    /// `achiral=+,-`, `achiral=none`, `achiral=?`.
    fn decl_attrs(&mut self) -> Result<AtomDecl, ChiralityError> {
        let mut d = AtomDecl {
            trivial: false,
            prime: true,
            achiral: None,
        };
        loop {
            let key = self.ident()?;
            match key.as_str() {
                "trivial" => {
                    d.trivial = true;
                    d.prime = false;
                    d.achiral = Some(vec![1, -1]);
                }
                "prime" => d.prime = true,
                "composite" => d.prime = false,
                "achiral" => {
                    self.expect('=')?;
                    d.achiral = self.sign_list()?;
                }
                other => return self.err(format!("unknown attribute `{other}`")),
            }
            if !self.eat(',') {
                break;
            }
        }
        Ok(d)
    }

    /// `+,-` or `none`; `?` means unknown.
    fn sign_list(&mut self) -> Result<Option<Vec<i32>>, ChiralityError> {
        if self.eat('?') {
            return Ok(None);
        }
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == "none") {
            self.i += 1;
            return Ok(Some(Vec::new()));
        }
        let mut out = Vec::new();
        loop {
            let s = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                return self.err("expected `+` or `-`");
            };
            if !out.contains(&s) {
                out.push(s);
            }
            let next_is_sign = matches!(self.peek_at(1), Some(Tok::Sym('+' | '-')));
            if self.peek() == Some(&Tok::Sym(',')) && next_is_sign {
                self.i += 1;
            } else {
                break;
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Some(out))
    }
}

impl FromStr for SatelliteExpr {
    type Err = ChiralityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s)?;
        let e = p.expr()?;
        p.done()?;
        Ok(e)
    }
}

/// Parse one declaration `name: attrs`.
pub fn parse_declaration(s: &str) -> Result<(String, AtomDecl), ChiralityError> {
    let mut p = Parser::new(s)?;
    let name = p.ident()?;
    p.expect(':')?;
    let d = p.decl_attrs()?;
    p.done()?;
    Ok((name, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_forms() {
        let e: SatelliteExpr = "Bing(r=0, Hopf)".parse().unwrap();
        assert_eq!(e, SatelliteExpr::bing(0, 0, SatelliteExpr::Hopf));
        let e: SatelliteExpr = "WDouble(r=2, atom(fig8, achiral=+,-))".parse().unwrap();
        assert_eq!(
            e,
            SatelliteExpr::whitehead(2, 0, SatelliteExpr::declared("fig8", AtomDecl::achiral_prime(&[1, -1])))
        );
        let e: SatelliteExpr = "Sum(atom(T), atom(Tm); rel: mirror(T)=Tm)".parse().unwrap();
        let SatelliteExpr::ConnectedSum { factors, relations } = &e else {
            panic!()
        };
        assert_eq!(factors.len(), 2);
        assert_eq!(
            relations,
            &vec![Relation {
                left: "T".into(),
                sign: 1,
                right: "Tm".into()
            }]
        );
        let e: SatelliteExpr = "Cable(p=2, q=-3, on=1, Bing(on=2, r=-1, Borromean))".parse().unwrap();
        assert_eq!(
            e,
            SatelliteExpr::cable(2, -3, 1, SatelliteExpr::bing(-1, 2, SatelliteExpr::Borromean))
        );
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "Bing(r=0, Hopf)",
            "WDouble(r=-1, on=1, atom(K, achiral=none))",
            "Sum(atom(T), atom(Tm); rel: mirror(T)=-Tm)",
            "Cable(p=3, q=2, atom(O, trivial, achiral=+,-))",
            "atom(E, achiral=?)",
        ] {
            let e: SatelliteExpr = s.parse().unwrap();
            assert_eq!(e.to_string().parse::<SatelliteExpr>().unwrap(), e, "{s}");
        }
    }

    #[test]
    fn declarations_and_errors() {
        let (n, d) = parse_declaration("T: achiral=none").unwrap();
        assert_eq!(n, "T");
        assert_eq!(d, AtomDecl::chiral_prime());
        assert_eq!(parse_declaration("E: achiral=-").unwrap().1.achiral, Some(vec![-1]));
        assert_eq!(parse_declaration("E: achiral=?").unwrap().1.achiral, None);
        assert!(matches!(
            "Bing(r=0 Hopf)".parse::<SatelliteExpr>(),
            Err(ChiralityError::Parse { .. })
        ));
        assert!("Hopf Hopf".parse::<SatelliteExpr>().is_err());
        assert!("Foo(Hopf)".parse::<SatelliteExpr>().is_err());
        assert!("Cable(p=2, Hopf)".parse::<SatelliteExpr>().is_err());
    }
}
