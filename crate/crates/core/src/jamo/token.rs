use std::fmt;

use super::JamoError;

macro_rules! letter_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            /// Name used by the token serialization and rule files.
            pub fn name(self) -> &'static str {
                match self {
                    $($name::$variant => stringify!($variant)),+
                }
            }

            pub fn from_name(name: &str) -> Option<$name> {
                match name {
                    $(stringify!($variant) => Some($name::$variant),)+
                    _ => None,
                }
            }

            /// Position in the Unicode conjoining-jamo ordering.
            pub fn index(self) -> u32 {
                self as u32
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

letter_enum! {
    /// Consonant letters. Declaration order follows the Unicode choseong order,
    /// so `index()` is the initial-consonant index used in syllable composition.
    Consonant { G, GG, N, D, DD, R, M, B, BB, S, SS, NG, J, JJ, CH, K, T, P, H }
}

letter_enum! {
    /// Vowel letters in Unicode jungseong order.
    Vowel { A, AE, YA, YAE, EO, E, YEO, YE, O, WA, WAE, OE, YO, U, WO, WE, WI, YU, EU, UI, I }
}

/// Consonants whose stroke may be swollen into a modified letter.
pub const MODIFIABLE_CONSONANTS: [Consonant; 10] = [
    Consonant::D,
    Consonant::R,
    Consonant::B,
    Consonant::S,
    Consonant::NG,
    Consonant::K,
    Consonant::P,
    Consonant::H,
    Consonant::J,
    Consonant::CH,
];

impl Consonant {
    pub fn is_modifiable(self) -> bool {
        MODIFIABLE_CONSONANTS.contains(&self)
    }

    /// Index into the Unicode jongseong table (1-based; 0 means "no final").
    /// `None` for the fortis letters that cannot close a modern syllable.
    pub fn final_index(self) -> Option<u32> {
        use Consonant::*;
        Some(match self {
            G => 1,
            GG => 2,
            N => 4,
            D => 7,
            R => 8,
            M => 16,
            B => 17,
            S => 19,
            SS => 20,
            NG => 21,
            J => 22,
            CH => 23,
            K => 24,
            T => 25,
            P => 26,
            H => 27,
            DD | BB | JJ => return None,
        })
    }

    /// Hangul compatibility jamo for this consonant.
    pub fn compat_char(self) -> char {
        use Consonant::*;
        let code = match self {
            G => 0x3131,
            GG => 0x3132,
            N => 0x3134,
            D => 0x3137,
            DD => 0x3138,
            R => 0x3139,
            M => 0x3141,
            B => 0x3142,
            BB => 0x3143,
            S => 0x3145,
            SS => 0x3146,
            NG => 0x3147,
            J => 0x3148,
            JJ => 0x3149,
            CH => 0x314A,
            K => 0x314B,
            T => 0x314C,
            P => 0x314D,
            H => 0x314E,
        };
        char::from_u32(code).expect("compatibility jamo range")
    }
}

/// How a vowel sits next to the onset inside a syllable block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VowelShape {
    /// Vertical stem: onset to the left, vowel to the right (ㅏ, ㅣ, ...).
    Vertical,
    /// Horizontal bar: onset on top, vowel underneath (ㅗ, ㅡ, ...).
    Horizontal,
    /// Compound of a horizontal and a vertical vowel (ㅘ, ㅢ, ...).
    Mixed,
}

impl Vowel {
    pub fn compat_char(self) -> char {
        char::from_u32(0x314F + self.index()).expect("compatibility jamo range")
    }

    pub fn shape(self) -> VowelShape {
        use Vowel::*;
        match self {
            A | AE | YA | YAE | EO | E | YEO | YE | I => VowelShape::Vertical,
            O | YO | U | YU | EU => VowelShape::Horizontal,
            WA | WAE | OE | WO | WE | WI | UI => VowelShape::Mixed,
        }
    }

    /// The two keyboard vowels a compound vowel is typed from.
    pub fn compound_parts(self) -> Option<(Vowel, Vowel)> {
        use Vowel::*;
        Some(match self {
            WA => (O, A),
            WAE => (O, AE),
            OE => (O, I),
            WO => (U, EO),
            WE => (U, E),
            WI => (U, I),
            UI => (EU, I),
            _ => return None,
        })
    }

    pub fn combine(first: Vowel, second: Vowel) -> Option<Vowel> {
        Vowel::ALL
            .iter()
            .copied()
            .find(|v| v.compound_parts() == Some((first, second)))
    }
}

/// The letter a token is built on. The silent vowel is a nucleus-only letter
/// with no Unicode counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Consonant(Consonant),
    Vowel(Vowel),
    Silent,
}

impl Base {
    pub fn is_vowel(self) -> bool {
        !matches!(self, Base::Consonant(_))
    }

    pub fn name(self) -> &'static str {
        match self {
            Base::Consonant(c) => c.name(),
            Base::Vowel(v) => v.name(),
            Base::Silent => "SIL",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Onset,
    Nucleus,
    Coda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Modifier {
    #[default]
    Plain,
    /// Consonant with its target stroke swollen.
    Modified,
    /// Vowel carrying the r-colouring unit.
    Rhotic,
}

/// One extended-jamo unit.
///
/// Construction goes through [`JamoToken::new`] (or the shorthand constructors),
/// which enforces the role and modifier rules: vowels only as nuclei, the
/// modified flag only on [`MODIFIABLE_CONSONANTS`], the rhotic flag only on
/// real vowels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JamoToken {
    base: Base,
    role: Role,
    modifier: Modifier,
}

impl JamoToken {
    pub fn new(base: Base, role: Role, modifier: Modifier) -> Result<Self, JamoError> {
        match (base, role, modifier) {
            (Base::Consonant(_), Role::Nucleus, _) => Err(JamoError::RoleMismatch {
                token: base.name().to_string(),
            }),
            (Base::Vowel(_) | Base::Silent, Role::Onset | Role::Coda, _) => Err(JamoError::RoleMismatch {
                token: base.name().to_string(),
            }),
            (Base::Consonant(c), _, Modifier::Modified) if !c.is_modifiable() => Err(JamoError::NotModifiable(c)),
            (Base::Consonant(_), _, Modifier::Rhotic) | (Base::Vowel(_), _, Modifier::Modified) => {
                Err(JamoError::BadModifier {
                    token: base.name().to_string(),
                })
            }
            (Base::Silent, _, Modifier::Modified | Modifier::Rhotic) => Err(JamoError::BadModifier {
                token: base.name().to_string(),
            }),
            _ => Ok(JamoToken { base, role, modifier }),
        }
    }

    pub fn onset(c: Consonant) -> Self {
        JamoToken {
            base: Base::Consonant(c),
            role: Role::Onset,
            modifier: Modifier::Plain,
        }
    }

    pub fn modified(c: Consonant) -> Result<Self, JamoError> {
        Self::new(Base::Consonant(c), Role::Onset, Modifier::Modified)
    }

    pub fn vowel(v: Vowel) -> Self {
        JamoToken {
            base: Base::Vowel(v),
            role: Role::Nucleus,
            modifier: Modifier::Plain,
        }
    }

    pub fn rhotic(v: Vowel) -> Self {
        JamoToken {
            base: Base::Vowel(v),
            role: Role::Nucleus,
            modifier: Modifier::Rhotic,
        }
    }

    pub fn silent() -> Self {
        JamoToken {
            base: Base::Silent,
            role: Role::Nucleus,
            modifier: Modifier::Plain,
        }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn modifier(&self) -> Modifier {
        self.modifier
    }

    pub fn consonant(&self) -> Option<Consonant> {
        match self.base {
            Base::Consonant(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_vowel(&self) -> bool {
        self.base.is_vowel()
    }

    pub fn is_silent(&self) -> bool {
        self.base == Base::Silent
    }

    /// True for modified consonants and rhotic vowels.
    pub fn is_marked(&self) -> bool {
        self.modifier != Modifier::Plain
    }

    /// Same letter in another consonant position. Vowels keep their role.
    pub fn with_role(self, role: Role) -> Self {
        if self.is_vowel() {
            self
        } else {
            JamoToken { role, ..self }
        }
    }

    pub fn with_modifier(self, modifier: Modifier) -> Result<Self, JamoError> {
        JamoToken::new(self.base, self.role, modifier)
    }

    /// Parses a bare token name (`B`, `B*`, `A`, `A^`, `_`). Consonants come
    /// back with the onset role.
    pub fn parse(name: &str) -> Result<Self, JamoError> {
        if name == "_" {
            return Ok(JamoToken::silent());
        }
        let (stem, modifier) = if let Some(stem) = name.strip_suffix('*') {
            (stem, Modifier::Modified)
        } else if let Some(stem) = name.strip_suffix('^') {
            (stem, Modifier::Rhotic)
        } else {
            (name, Modifier::Plain)
        };
        if let Some(c) = Consonant::from_name(stem) {
            JamoToken::new(Base::Consonant(c), Role::Onset, modifier)
        } else if let Some(v) = Vowel::from_name(stem) {
            JamoToken::new(Base::Vowel(v), Role::Nucleus, modifier)
        } else {
            Err(JamoError::UnknownToken {
                name: name.to_string(),
                offset: 0,
            })
        }
    }

    /// File-name stem used for this token's glyph (`B_m`, `A_r`, `SIL`).
    pub fn glyph_stem(&self) -> String {
        match (self.base, self.modifier) {
            (Base::Silent, _) => "SIL".to_string(),
            (b, Modifier::Modified) => format!("{}_m", b.name()),
            (b, Modifier::Rhotic) => format!("{}_r", b.name()),
            (b, Modifier::Plain) => b.name().to_string(),
        }
    }

    /// Role-free identity, used for alphabets and glyph lookup.
    pub fn letter(&self) -> Letter {
        Letter {
            base: self.base,
            modifier: self.modifier,
        }
    }
}

impl fmt::Display for JamoToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.base, self.modifier) {
            (Base::Silent, _) => f.write_str("_"),
            (b, Modifier::Modified) => write!(f, "{}*", b.name()),
            (b, Modifier::Rhotic) => write!(f, "{}^", b.name()),
            (b, Modifier::Plain) => f.write_str(b.name()),
        }
    }
}

/// A token with its position stripped: what a keyboard key or glyph stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub base: Base,
    pub modifier: Modifier,
}

impl Letter {
    pub fn token(&self) -> JamoToken {
        let role = if self.base.is_vowel() {
            Role::Nucleus
        } else {
            Role::Onset
        };
        JamoToken {
            base: self.base,
            role,
            modifier: self.modifier,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.token().fmt(f)
    }
}

/// Tone number attached to a syllable block: 0 = none, 1-4 Mandarin tones,
/// 5 = neutral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Tone(u8);

impl Tone {
    pub const NONE: Tone = Tone(0);

    pub fn new(value: u8) -> Result<Self, JamoError> {
        if value <= 5 {
            Ok(Tone(value))
        } else {
            Err(JamoError::BadTone(value))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_none(self) -> bool {
        self.0 == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modifier_gating_over_all_consonants() {
        for &c in Consonant::ALL {
            let res = JamoToken::modified(c);
            assert_eq!(res.is_ok(), MODIFIABLE_CONSONANTS.contains(&c), "{c}");
        }
        assert_eq!(Consonant::ALL.len(), 19);
        assert_eq!(Vowel::ALL.len(), 21);
    }

    #[test]
    fn role_rules() {
        assert!(JamoToken::new(Base::Vowel(Vowel::A), Role::Onset, Modifier::Plain).is_err());
        assert!(JamoToken::new(Base::Consonant(Consonant::G), Role::Nucleus, Modifier::Plain).is_err());
        assert!(JamoToken::new(Base::Silent, Role::Coda, Modifier::Plain).is_err());
        assert!(JamoToken::new(Base::Silent, Role::Nucleus, Modifier::Rhotic).is_err());
        assert!(JamoToken::new(Base::Consonant(Consonant::B), Role::Coda, Modifier::Rhotic).is_err());
        assert!(JamoToken::new(Base::Vowel(Vowel::A), Role::Nucleus, Modifier::Rhotic).is_ok());
    }

    #[test]
    fn names_and_parse() {
        assert_eq!(JamoToken::parse("B*").unwrap().to_string(), "B*");
        assert_eq!(JamoToken::parse("A^").unwrap().to_string(), "A^");
        assert_eq!(JamoToken::parse("_").unwrap(), JamoToken::silent());
        assert!(JamoToken::parse("G*").is_err());
        assert!(JamoToken::parse("KK").is_err());
        assert_eq!(JamoToken::parse("B*").unwrap().glyph_stem(), "B_m");
        assert_eq!(JamoToken::parse("EO^").unwrap().glyph_stem(), "EO_r");
        assert_eq!(JamoToken::silent().glyph_stem(), "SIL");
    }

    #[test]
    fn unicode_tables() {
        assert_eq!(Consonant::H.compat_char(), 'ㅎ');
        assert_eq!(Vowel::I.compat_char(), 'ㅣ');
        assert_eq!(Vowel::EU.compat_char(), 'ㅡ');
        assert_eq!(Vowel::combine(Vowel::O, Vowel::A), Some(Vowel::WA));
        assert_eq!(Vowel::combine(Vowel::A, Vowel::O), None);
    }
}
