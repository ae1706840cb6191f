//! APX interchange format: line-oriented `arg(name).` and `att(x,y).`
//! facts, `%` comments, arbitrary whitespace. Several facts may share a
//! line. Attack endpoints must be declared by an `arg` fact somewhere in
//! the input.

use crate::error::{Error, Result};
use crate::framework::ArgumentationFramework;

#[derive(Debug, PartialEq, Eq)]
enum Fact {
    Arg(String),
    Att(String, String),
}

struct LineScanner<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> LineScanner<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        LineScanner {
            bytes: text.as_bytes(),
            pos: 0,
            line,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.bytes.len()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        self.skip_ws();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == byte {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!(
                "expected `{}`{}",
                byte as char,
                self.context_snippet()
            )))
        }
    }

    fn identifier(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(format!("expected an identifier{}", self.context_snippet())));
        }
        Ok(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    fn context_snippet(&self) -> String {
        let rest = String::from_utf8_lossy(&self.bytes[self.pos.min(self.bytes.len())..]);
        let rest: String = rest.trim().chars().take(20).collect();
        if rest.is_empty() {
            " at end of line".to_owned()
        } else {
            format!(" before `{rest}`")
        }
    }

    fn fact(&mut self) -> Result<Fact> {
        let keyword = self.identifier()?;
        match keyword.as_str() {
            "arg" => {
                self.expect(b'(')?;
                let name = self.identifier()?;
                self.expect(b')')?;
                self.expect(b'.')?;
                Ok(Fact::Arg(name))
            }
            "att" => {
                self.expect(b'(')?;
                let src = self.identifier()?;
                self.expect(b',')?;
                let dst = self.identifier()?;
                self.expect(b')')?;
                self.expect(b'.')?;
                Ok(Fact::Att(src, dst))
            }
            other => Err(self.error(format!("unknown fact `{other}`, expected arg/att"))),
        }
    }
}

/// Parses APX text into a framework.
pub fn parse_apx(text: &str) -> Result<ArgumentationFramework> {
    let mut facts: Vec<(usize, Fact)> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = match raw_line.find('%') {
            Some(cut) => &raw_line[..cut],
            None => raw_line,
        };
        let mut scanner = LineScanner::new(content, line_no);
        while !scanner.at_end() {
            facts.push((line_no, scanner.fact()?));
        }
    }

    let mut names: Vec<String> = Vec::new();
    for (_, fact) in &facts {
        if let Fact::Arg(name) = fact {
            names.push(name.clone());
        }
    }
    let declared: std::collections::HashSet<&str> =
        names.iter().map(String::as_str).collect();

    let mut attacks: Vec<(String, String)> = Vec::new();
    for (line, fact) in &facts {
        if let Fact::Att(src, dst) = fact {
            for endpoint in [src, dst] {
                if !declared.contains(endpoint.as_str()) {
                    return Err(Error::Parse {
                        line: *line,
                        message: format!("attack endpoint `{endpoint}` is not declared"),
                    });
                }
            }
            attacks.push((src.clone(), dst.clone()));
        }
    }

    ArgumentationFramework::new(names, attacks)
}

/// Renders a framework as APX text: all `arg` facts, then all `att` facts,
/// in the framework's deterministic order.
pub fn print_apx(af: &ArgumentationFramework) -> String {
    let mut out = String::new();
    for id in af.arguments().iter() {
        out.push_str("arg(");
        out.push_str(af.name_of(id));
        out.push_str(").\n");
    }
    for (src, dst) in af.attacks() {
        out.push_str("att(");
        out.push_str(af.name_of(src));
        out.push(',');
        out.push_str(af.name_of(dst));
        out.push_str(").\n");
    }
    out
}
