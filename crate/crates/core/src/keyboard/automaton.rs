//! The typing automaton.
//!
//! * A consonant after an open nucleus is a tentative coda; a following vowel
//!   takes it back as its onset.
//! * A vowel with no onset gets NG; an onset closed with no vowel gets the
//!   silent vowel.
//! * Two vowels that form a compound merge (ㅗ+ㅏ → ㅘ).
//! * A tone key sets the tone and closes the block.
//! * Space closes the block and the word.
//! * Backspace peels the open block (tone, coda, rhotic flag, second half of a
//!   compound, nucleus, onset); with nothing open it reopens the last block and
//!   peels that, or removes the last word break.

use super::{KeyAction, KeyEvent, KeyboardError, KeyboardLayout};
use crate::jamo::{Base, JamoToken, Letter, Modifier, Role, SyllableBlock, Tone, Transcript, Vowel};

/// The block being typed. Always a legal prefix of a [`SyllableBlock`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PendingBlock {
    pub onset: Option<JamoToken>,
    pub nucleus: Option<JamoToken>,
    pub coda: Option<JamoToken>,
    pub tone: Tone,
}

impl PendingBlock {
    pub fn is_empty(&self) -> bool {
        self.onset.is_none()
    }

    /// The block this would close into; a bare onset gets the silent vowel.
    pub fn close(&self) -> Option<SyllableBlock> {
        let onset = self.onset?;
        let nucleus = self.nucleus.unwrap_or_else(JamoToken::silent);
        Some(SyllableBlock::new(onset, nucleus, self.coda, self.tone).expect("pending block is a legal prefix"))
    }

    fn open(block: SyllableBlock) -> PendingBlock {
        PendingBlock {
            onset: Some(block.onset()),
            nucleus: Some(block.nucleus()),
            coda: block.coda(),
            tone: block.tone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Committed {
    Block(SyllableBlock),
    Break,
}

/// Committed blocks and word breaks plus the open block.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompositionState {
    committed: Vec<Committed>,
    pending: PendingBlock,
}

fn nucleus_token(letter: Letter) -> JamoToken {
    letter.token()
}

impl CompositionState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pending(&self) -> &PendingBlock {
        &self.pending
    }

    /// Everything typed so far, the open block included.
    pub fn snapshot(&self) -> Transcript {
        let mut words = vec![Vec::new()];
        for c in &self.committed {
            match c {
                Committed::Block(b) => words.last_mut().unwrap().push(*b),
                Committed::Break => words.push(Vec::new()),
            }
        }
        if let Some(b) = self.pending.close() {
            words.last_mut().unwrap().push(b);
        }
        Transcript::new(words)
    }

    /// Blocks already closed, without the open one.
    pub fn committed(&self) -> Transcript {
        CompositionState {
            committed: self.committed.clone(),
            pending: PendingBlock::default(),
        }
        .snapshot()
    }

    fn commit(&mut self) {
        if let Some(b) = self.pending.close() {
            self.committed.push(Committed::Block(b));
        }
        self.pending = PendingBlock::default();
    }

    fn start(&mut self, onset: JamoToken) {
        self.commit();
        self.pending.onset = Some(onset.with_role(Role::Onset));
    }

    fn consonant(&mut self, c: JamoToken) {
        let p = self.pending;
        if p.nucleus.is_some() && p.coda.is_none() && p.tone.is_none() {
            self.pending.coda = Some(c.with_role(Role::Coda));
        } else {
            self.start(c);
        }
    }

    fn vowel(&mut self, v: JamoToken) {
        let p = self.pending;
        if !p.tone.is_none() || p.onset.is_none() {
            self.start(JamoToken::onset(crate::jamo::Consonant::NG));
        } else if let Some(coda) = p.coda {
            self.pending.coda = None;
            self.start(coda);
        } else if let Some(cur) = p.nucleus {
            match (cur.base(), v.base(), cur.modifier(), v.modifier()) {
                (Base::Vowel(a), Base::Vowel(b), Modifier::Plain, Modifier::Plain)
                    if Vowel::combine(a, b).is_some() =>
                {
                    self.pending.nucleus = Vowel::combine(a, b).map(JamoToken::vowel);
                    return;
                }
                _ => self.start(JamoToken::onset(crate::jamo::Consonant::NG)),
            }
        }
        self.pending.nucleus = Some(v);
    }

    fn rhotic(&mut self) {
        let p = &mut self.pending;
        if p.coda.is_some() || !p.tone.is_none() {
            return;
        }
        if let Some(n) = p.nucleus {
            let flipped = match n.modifier() {
                Modifier::Plain => Modifier::Rhotic,
                _ => Modifier::Plain,
            };
            if let Ok(t) = n.with_modifier(flipped) {
                p.nucleus = Some(t);
            }
        }
    }

    fn tone(&mut self, t: u8) {
        if self.pending.nucleus.is_some() {
            self.pending.tone = Tone::new(t).expect("tone key in 1..=5");
            self.commit();
        }
    }

    fn space(&mut self) {
        self.commit();
        self.committed.push(Committed::Break);
    }

    fn backspace(&mut self) {
        let p = &mut self.pending;
        if !p.tone.is_none() {
            p.tone = Tone::NONE;
        } else if p.coda.is_some() {
            p.coda = None;
        } else if let Some(n) = p.nucleus {
            p.nucleus = match (n.base(), n.modifier()) {
                (_, Modifier::Rhotic) => n.with_modifier(Modifier::Plain).ok(),
                (Base::Vowel(v), _) => v.compound_parts().map(|(a, _)| JamoToken::vowel(a)),
                _ => None,
            };
        } else if p.onset.is_some() {
            p.onset = None;
        } else {
            match self.committed.pop() {
                Some(Committed::Block(b)) => {
                    self.pending = PendingBlock::open(b);
                    self.backspace();
                }
                Some(Committed::Break) | None => {}
            }
        }
    }

    /// Applies one action. Pure: the state is a value.
    pub fn step(mut self, action: KeyAction) -> CompositionState {
        match action {
            KeyAction::Letter(l) if l.base.is_vowel() => self.vowel(nucleus_token(l)),
            KeyAction::Letter(l) => self.consonant(l.token()),
            KeyAction::Tone(t) => self.tone(t),
            KeyAction::Rhotic => self.rhotic(),
            KeyAction::Space => self.space(),
            KeyAction::Backspace => self.backspace(),
        }
        self
    }

    pub fn press(self, event: &KeyEvent, layout: &KeyboardLayout) -> Result<CompositionState, KeyboardError> {
        let action = layout.action(event).ok_or_else(|| KeyboardError::UnknownKey {
            code: event.code.clone(),
            shift: event.shift,
        })?;
        Ok(self.step(action))
    }
}

/// Folds the events through the automaton. Returns the text so far (open
/// block included) and the final state.
pub fn keystrokes_to_blocks(
    events: &[KeyEvent],
    layout: &KeyboardLayout,
) -> Result<(Transcript, CompositionState), KeyboardError> {
    let state = events
        .iter()
        .try_fold(CompositionState::new(), |s, e| s.press(e, layout))?;
    Ok((state.snapshot(), state))
}
