use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schedule::TeamCount;

/// The three rule configurations the solver ships with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Period cap only, first week fixed, every other week searched.
    Base,
    /// Adds the distribution property and the mirror rule pairing week `w`
    /// with week `W - w + 1`.
    Enass3,
    /// Adds to `Enass3` the inversion of weeks 2 and `W - 1`.
    Enass4,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Base, Variant::Enass3, Variant::Enass4];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Base => "base",
            Variant::Enass3 => "enass3",
            Variant::Enass4 => "enass4",
        }
    }

    pub fn rules(self, teams: TeamCount) -> Result<RuleSet> {
        match self {
            Variant::Base => Ok(RuleSet::baseline(teams)),
            Variant::Enass3 => Ok(RuleSet::mirror(teams)),
            Variant::Enass4 => RuleSet::inversion(teams),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "base" | "baseline" => Ok(Variant::Base),
            "enass3" => Ok(Variant::Enass3),
            "enass4" => Ok(Variant::Enass4),
            other => Err(format!("unknown variant {other:?} (expected base, enass3 or enass4)")),
        }
    }
}

/// The active requirement set and the week range searched in each period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleSet {
    /// At most two appearances per team per period. Always on.
    pub use_cp: bool,
    /// Every team at least once per period.
    pub use_cd: bool,
    /// Week `w` and week `W - w + 1` take the same source period.
    pub use_mirror: bool,
    /// Weeks 2 and `W - 1` hold the initial columns in reverse order.
    pub use_inversion: bool,
    /// Week 1 equals the initial schedule's week 1. Always on.
    pub week1_invariant: bool,
    /// First week searched in each period.
    pub first_week: usize,
    /// Last week searched before the self-mirrored week `P` (mirror mode)
    /// or before moving to the next period.
    pub last_week: usize,
}

impl RuleSet {
    pub fn baseline(teams: TeamCount) -> Self {
        RuleSet {
            use_cp: true,
            use_cd: false,
            use_mirror: false,
            use_inversion: false,
            week1_invariant: true,
            first_week: 2,
            last_week: teams.weeks(),
        }
    }

    pub fn mirror(teams: TeamCount) -> Self {
        RuleSet {
            use_cd: true,
            use_mirror: true,
            last_week: teams.periods() - 1,
            ..RuleSet::baseline(teams)
        }
    }

    /// Needs at least six teams: with four, weeks 2 and `W - 1` coincide
    /// with the self-mirrored week.
    pub fn inversion(teams: TeamCount) -> Result<Self> {
        let rules = RuleSet {
            use_inversion: true,
            first_week: 3,
            ..RuleSet::mirror(teams)
        };
        rules.validate(teams)?;
        Ok(rules)
    }

    /// Weeks fully fixed before the search starts, ascending.
    pub fn seeded_weeks(&self, teams: TeamCount) -> Vec<usize> {
        let weeks = teams.weeks();
        let mut out = vec![1];
        if self.use_mirror {
            out.push(weeks);
        }
        if self.use_inversion {
            out.push(2);
            out.push(weeks - 1);
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Weeks searched in each period, in visiting order. Under the mirror
    /// rule each entry also fills its partner week, and the self-mirrored
    /// week `P` comes last.
    pub fn searched_weeks(&self, teams: TeamCount) -> Vec<usize> {
        let mut out: Vec<usize> = (self.first_week..=self.last_week).collect();
        if self.use_mirror {
            out.push(teams.periods());
        }
        out
    }

    pub fn validate(&self, teams: TeamCount) -> Result<()> {
        let (weeks, periods) = (teams.weeks(), teams.periods());
        let fail = |msg: String| Err(Error::InvalidRules(msg));
        if !self.use_cp {
            return fail("the period cap cannot be disabled".into());
        }
        if !self.week1_invariant {
            return fail("week 1 must be invariant".into());
        }
        if self.use_inversion && !self.use_mirror {
            return fail("inversion requires the mirror rule".into());
        }
        if self.use_inversion && teams.get() < 6 {
            return fail(format!("inversion needs at least 6 teams, got {teams}"));
        }
        if self.first_week < 2 {
            return fail(format!("first week {} overlaps the fixed week 1", self.first_week));
        }
        if self.use_mirror && self.last_week >= periods {
            return fail(format!(
                "mirror rule pairs weeks 1..={}, last week {} is out of range",
                periods - 1,
                self.last_week
            ));
        }
        if self.last_week > weeks {
            return fail(format!("last week {} exceeds {weeks}", self.last_week));
        }

        // Every week must be either seeded or visited exactly once.
        let mut cover = vec![0u32; weeks + 1];
        for w in self.seeded_weeks(teams) {
            cover[w] += 1;
        }
        for w in self.searched_weeks(teams) {
            cover[w] += 1;
            if self.use_mirror && w != periods {
                cover[weeks - w + 1] += 1;
            }
        }
        if let Some(w) = (1..=weeks).find(|&w| cover[w] != 1) {
            return fail(format!(
                "week {w} is {} by the seed and the searched range",
                if cover[w] == 0 { "not covered" } else { "covered twice" }
            ));
        }
        Ok(())
    }
}
