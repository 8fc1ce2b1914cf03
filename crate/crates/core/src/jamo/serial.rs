//! Text form of a [`Transcript`]:
//!
//! ```text
//! TEXT   := WORD (" / " WORD)*
//! WORD   := BLOCK (" . " BLOCK)*
//! BLOCK  := ONSET "+" NUCLEUS ("+" CODA)? TONE?
//! ONSET  := consonant-name "*"?        CODA likewise
//! NUCLEUS:= vowel-name "^"? | "_"
//! TONE   := "1".."5"
//! ```

use std::fmt::Write;

use super::{Base, Consonant, JamoError, JamoToken, Modifier, Role, SyllableBlock, Tone, Transcript, Vowel};

const BLOCK_SEP: &str = " . ";
const WORD_SEP: &str = " / ";

pub fn serialize_tokens(transcript: &Transcript) -> String {
    let mut out = String::new();
    for (wi, word) in transcript.words().iter().enumerate() {
        if wi > 0 {
            out.push_str(WORD_SEP);
        }
        for (bi, block) in word.iter().enumerate() {
            if bi > 0 {
                out.push_str(BLOCK_SEP);
            }
            write!(out, "{}+{}", block.onset(), block.nucleus()).unwrap();
            if let Some(coda) = block.coda() {
                write!(out, "+{coda}").unwrap();
            }
            if !block.tone().is_none() {
                write!(out, "{}", block.tone().value()).unwrap();
            }
        }
    }
    out
}

pub fn parse_tokens(text: &str) -> Result<Transcript, JamoError> {
    if text.is_empty() {
        return Ok(Transcript::default());
    }
    let mut p = Parser { src: text, pos: 0 };
    let mut words = vec![p.word()?];
    while !p.at_end() {
        p.expect(WORD_SEP, "\" / \" or end of input")?;
        words.push(p.word()?);
    }
    Ok(Transcript::new(words))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str, what: &'static str) -> Result<(), JamoError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.syntax(what))
        }
    }

    fn syntax(&self, expected: &'static str) -> JamoError {
        JamoError::Syntax {
            offset: self.pos,
            expected,
        }
    }

    fn word(&mut self) -> Result<Vec<SyllableBlock>, JamoError> {
        let mut blocks = vec![self.block()?];
        while self.eat(BLOCK_SEP) {
            blocks.push(self.block()?);
        }
        Ok(blocks)
    }

    fn name(&mut self) -> (usize, &str) {
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_uppercase).count();
        self.pos += len;
        (start, &self.src[start..self.pos])
    }

    fn consonant(&mut self, role: Role) -> Result<JamoToken, JamoError> {
        let (start, name) = self.name();
        if name.is_empty() {
            return Err(JamoError::Syntax {
                offset: start,
                expected: "consonant name",
            });
        }
        let c = Consonant::from_name(name).ok_or_else(|| JamoError::UnknownToken {
            name: name.to_string(),
            offset: start,
        })?;
        let modifier = if self.eat("*") {
            Modifier::Modified
        } else {
            Modifier::Plain
        };
        JamoToken::new(Base::Consonant(c), role, modifier)
    }

    fn nucleus(&mut self) -> Result<JamoToken, JamoError> {
        if self.eat("_") {
            return Ok(JamoToken::silent());
        }
        let (start, name) = self.name();
        if name.is_empty() {
            return Err(JamoError::Syntax {
                offset: start,
                expected: "vowel name or `_`",
            });
        }
        let v = Vowel::from_name(name).ok_or_else(|| JamoError::UnknownToken {
            name: name.to_string(),
            offset: start,
        })?;
        Ok(if self.eat("^") {
            JamoToken::rhotic(v)
        } else {
            JamoToken::vowel(v)
        })
    }

    fn block(&mut self) -> Result<SyllableBlock, JamoError> {
        let onset = self.consonant(Role::Onset)?;
        self.expect("+", "`+`")?;
        let nucleus = self.nucleus()?;
        let coda = if self.eat("+") {
            Some(self.consonant(Role::Coda)?)
        } else {
            None
        };
        let tone = match self.rest().as_bytes().first().copied() {
            Some(d @ b'1'..=b'5') => {
                self.pos += 1;
                Tone::new(d - b'0')?
            }
            _ => Tone::NONE,
        };
        SyllableBlock::new(onset, nucleus, coda, tone)
    }
}
