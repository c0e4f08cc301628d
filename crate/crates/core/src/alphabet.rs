//! Symbols, alphabets and finite words.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a symbol inside its alphabet.
pub type Symbol = u8;

/// Ordered list of distinct display tokens. Symbol `i` is `tokens()[i]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    tokens: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if tokens.len() > 256 {
            return Err(Error::AlphabetTooLarge(tokens.len()));
        }
        for (i, t) in tokens.iter().enumerate() {
            if t.is_empty() || t.chars().any(char::is_whitespace) || t.contains(',') {
                return Err(Error::Invalid(format!("bad token {t:?}")));
            }
            if tokens[..i].contains(t) {
                return Err(Error::DuplicateToken(t.clone()));
            }
        }
        Ok(Self { tokens: tokens.into() })
    }

    /// Alphabet `{0, 1, ..., size-1}` with decimal tokens.
    pub fn numeric(size: usize) -> Result<Self> {
        Self::new((0..size).map(|i| i.to_string()))
    }

    pub fn size(&self) -> usize {
        self.tokens.len()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.size()).map(|s| s as Symbol)
    }

    pub fn index_of(&self, token: &str) -> Result<Symbol> {
        self.tokens
            .iter()
            .position(|t| t == token)
            .map(|i| i as Symbol)
            .ok_or_else(|| Error::UnknownToken(token.to_string()))
    }

    fn single_char(&self) -> bool {
        self.tokens.iter().all(|t| t.chars().count() == 1)
    }

    /// Parses a word. With single-character tokens every non-space character
    /// is a symbol ("0110"); otherwise tokens are separated by whitespace or commas.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let symbols = if self.single_char() {
            text.chars()
                .filter(|c| !c.is_whitespace() && *c != ',')
                .map(|c| self.index_of(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| self.index_of(t))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(symbols))
    }

    pub fn word_from_tokens<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Word> {
        tokens
            .iter()
            .map(|t| self.index_of(t.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render(&self, word: &[Symbol]) -> String {
        let sep = if self.single_char() { "" } else { " " };
        word.iter()
            .map(|&s| self.tokens[s as usize].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn tokens_of(&self, word: &[Symbol]) -> Vec<String> {
        word.iter().map(|&s| self.tokens[s as usize].clone()).collect()
    }

    pub fn check(&self, word: &[Symbol]) -> Result<()> {
        match word.iter().find(|&&s| s as usize >= self.size()) {
            Some(&s) => Err(Error::SymbolOutOfRange { symbol: s as usize, size: self.size() }),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.tokens.iter()).finish()
    }
}

/// A finite block of symbols.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn repeat(symbol: Symbol, n: usize) -> Self {
        Word(vec![symbol; n])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    pub fn concat(parts: &[&[Symbol]]) -> Self {
        Word(parts.iter().flat_map(|p| p.iter().copied()).collect())
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s < 10) {
            let s: String = self.0.iter().map(|&s| char::from(b'0' + s)).collect();
            write!(f, "Word({s:?})")
        } else {
            write!(f, "Word({:?})", self.0)
        }
    }
}

/// A word together with its rendering, as carried by certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledWord {
    pub text: String,
    pub symbols: Word,
}

impl LabeledWord {
    pub fn new(alphabet: &Alphabet, word: &[Symbol]) -> Self {
        Self { text: alphabet.render(word), symbols: Word::from(word) }
    }
}
