use super::{JamoError, JamoToken, Role, SyllableBlock, Tone, Transcript};

/// One element of a flat jamo stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreamItem {
    Jamo(JamoToken),
    /// Tone of the block that was opened last.
    Tone(Tone),
    /// Word boundary.
    Break,
}

impl StreamItem {
    fn is_vowel(&self) -> bool {
        matches!(self, StreamItem::Jamo(t) if t.is_vowel())
    }
}

struct OpenBlock {
    block: SyllableBlock,
    // A coda or tone may still attach.
    accepts_coda: bool,
    accepts_tone: bool,
}

/// Greedy Hangul composition.
///
/// A consonant followed by a vowel opens a block. A consonant after an open
/// nucleus becomes its coda unless the next item is a vowel. Consonant roles in
/// the input are ignored; they are reassigned here.
pub fn compose(stream: &[StreamItem]) -> Result<Transcript, JamoError> {
    let mut words: Vec<Vec<SyllableBlock>> = Vec::new();
    let mut word: Vec<SyllableBlock> = Vec::new();
    let mut open: Option<OpenBlock> = None;
    let mut i = 0;

    while i < stream.len() {
        match stream[i] {
            StreamItem::Break => {
                if let Some(o) = open.take() {
                    word.push(o.block);
                }
                if !word.is_empty() {
                    words.push(std::mem::take(&mut word));
                }
                i += 1;
            }
            StreamItem::Tone(tone) => {
                let o = open.as_mut().ok_or(JamoError::Compose {
                    position: i,
                    reason: "tone with no open block",
                })?;
                if !o.accepts_tone {
                    return Err(JamoError::Compose {
                        position: i,
                        reason: "block already has a tone",
                    });
                }
                o.block = o.block.with_tone(tone);
                o.accepts_tone = false;
                o.accepts_coda = false;
                i += 1;
            }
            StreamItem::Jamo(token) if token.is_vowel() => {
                return Err(JamoError::Compose {
                    position: i,
                    reason: "vowel without an onset consonant",
                });
            }
            StreamItem::Jamo(consonant) => {
                let next_is_vowel = stream.get(i + 1).is_some_and(StreamItem::is_vowel);
                if next_is_vowel {
                    let StreamItem::Jamo(nucleus) = stream[i + 1] else {
                        unreachable!()
                    };
                    if let Some(o) = open.take() {
                        word.push(o.block);
                    }
                    let block = SyllableBlock::new(consonant.with_role(Role::Onset), nucleus, None, Tone::NONE)?;
                    open = Some(OpenBlock {
                        block,
                        accepts_coda: true,
                        accepts_tone: true,
                    });
                    i += 2;
                } else {
                    match open.as_mut() {
                        Some(o) if o.accepts_coda => {
                            o.block = o.block.with_coda(Some(consonant));
                            o.accepts_coda = false;
                            i += 1;
                        }
                        _ => {
                            return Err(JamoError::Compose {
                                position: i,
                                reason: "consonant with neither a vowel after nor an open syllable before",
                            })
                        }
                    }
                }
            }
        }
    }
    if let Some(o) = open.take() {
        word.push(o.block);
    }
    if !word.is_empty() {
        words.push(word);
    }
    Ok(Transcript::new(words))
}

/// Flattens blocks back into a stream: onset, nucleus, coda, tone per block,
/// with a break between words.
pub fn decompose(transcript: &Transcript) -> Vec<StreamItem> {
    let mut out = Vec::new();
    for (wi, word) in transcript.words().iter().enumerate() {
        if wi > 0 {
            out.push(StreamItem::Break);
        }
        for block in word {
            out.push(StreamItem::Jamo(block.onset()));
            out.push(StreamItem::Jamo(block.nucleus()));
            if let Some(c) = block.coda() {
                out.push(StreamItem::Jamo(c));
            }
            if !block.tone().is_none() {
                out.push(StreamItem::Tone(block.tone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{Consonant as C, Vowel as V};
    use super::*;

    fn c(c: C) -> StreamItem {
        StreamItem::Jamo(JamoToken::onset(c))
    }
    fn v(v: V) -> StreamItem {
        StreamItem::Jamo(JamoToken::vowel(v))
    }
    fn sil() -> StreamItem {
        StreamItem::Jamo(JamoToken::silent())
    }

    #[test]
    fn single_block_with_coda() {
        let t = compose(&[c(C::H), v(V::A), c(C::NG)]).unwrap();
        assert_eq!(t.block_count(), 1);
        let b = t.blocks().next().unwrap();
        assert_eq!(b.coda().unwrap().consonant(), Some(C::NG));
        assert_eq!(b.coda().unwrap().role(), Role::Coda);
    }

    #[test]
    fn consonant_reopens_before_vowel() {
        let t = compose(&[c(C::G), v(V::A), c(C::B), v(V::O)]).unwrap();
        let blocks: Vec<_> = t.blocks().copied().collect();
        assert_eq!(
            blocks,
            vec![SyllableBlock::simple(C::G, V::A), SyllableBlock::simple(C::B, V::O)]
        );
    }

    #[test]
    fn silent_nucleus_closes_block() {
        let t = compose(&[c(C::P), sil(), c(C::R), v(V::I)]).unwrap();
        let blocks: Vec<_> = t.blocks().collect();
        assert_eq!(blocks.len(), 2);
        assert!(blocks[0].nucleus().is_silent());
        assert_eq!(*blocks[1], SyllableBlock::simple(C::R, V::I));
    }

    #[test]
    fn rejects_bare_vowels() {
        let err = compose(&[c(C::G), v(V::A), v(V::I)]).unwrap_err();
        assert!(matches!(err, JamoError::Compose { position: 2, .. }));
        assert!(compose(&[v(V::A)]).is_err());
        assert!(compose(&[c(C::S), c(C::T), v(V::A)]).is_err());
    }

    #[test]
    fn tones_and_breaks() {
        let stream = [
            c(C::N),
            v(V::I),
            StreamItem::Tone(Tone::new(3).unwrap()),
            StreamItem::Break,
            c(C::H),
            v(V::A),
            c(C::NG),
            StreamItem::Tone(Tone::new(1).unwrap()),
        ];
        let t = compose(&stream).unwrap();
        assert_eq!(t.words().len(), 2);
        let flat = decompose(&t);
        assert_eq!(flat.len(), stream.len());
        assert_eq!(flat[6], StreamItem::Jamo(JamoToken::onset(C::NG).with_role(Role::Coda)));
        assert_eq!(compose(&flat).unwrap(), t);
        // tone closes the block against a later coda
        assert!(compose(&[c(C::N), v(V::I), StreamItem::Tone(Tone::new(3).unwrap()), c(C::N)]).is_err());
    }

    #[test]
    fn empty_stream() {
        assert!(compose(&[]).unwrap().is_empty());
        assert!(compose(&[StreamItem::Break, StreamItem::Break]).unwrap().is_empty());
        assert!(decompose(&Transcript::default()).is_empty());
    }
}
