// Shared tokenizer for the line-oriented fixture formats.

use std::str::FromStr;

use crate::error::InputError;

pub(crate) struct Token<'a> {
    pub column: usize,
    pub text: &'a str,
}

pub(crate) struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    pub fn keyword(&self) -> &'a str {
        self.tokens[0].text
    }

    pub fn args(&self) -> &[Token<'a>] {
        &self.tokens[1..]
    }

    /// Column just past the last token, for "missing argument" diagnostics.
    pub fn end_column(&self) -> usize {
        self.tokens
            .last()
            .map(|t| t.column + t.text.chars().count())
            .unwrap_or(1)
    }

    pub fn parse_error(&self, column: usize, message: impl Into<String>) -> InputError {
        InputError::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    pub fn invalid(&self, message: impl Into<String>) -> InputError {
        InputError::Validation {
            line: self.number,
            message: message.into(),
        }
    }

    pub fn expect_arity(&self, arity: usize) -> Result<(), InputError> {
        let got = self.args().len();
        if got < arity {
            Err(self.parse_error(
                self.end_column(),
                format!("`{}` expects {arity} arguments, found {got}", self.keyword()),
            ))
        } else if got > arity {
            Err(self.parse_error(
                self.args()[arity].column,
                format!("unexpected argument to `{}`", self.keyword()),
            ))
        } else {
            Ok(())
        }
    }

    pub fn number<T: FromStr>(&self, index: usize, what: &str) -> Result<T, InputError> {
        let token = &self.args()[index];
        token
            .text
            .parse()
            .map_err(|_| self.parse_error(token.column, format!("expected {what}, found `{}`", token.text)))
    }
}

/// Splits `text` into non-empty lines of whitespace-separated tokens with
/// 1-based line and column numbers; `#` starts a comment.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        let mut column = 0;
        for (byte, ch) in body.char_indices() {
            column += 1;
            if ch.is_whitespace() {
                if let Some((col, from)) = start.take() {
                    tokens.push(Token { column: col, text: &body[from..byte] });
                }
            } else if start.is_none() {
                start = Some((column, byte));
            }
        }
        if let Some((col, from)) = start {
            tokens.push(Token { column: col, text: &body[from..] });
        }
        (!tokens.is_empty()).then_some(Line { number: idx + 1, tokens })
    })
}
