use std::ops::ControlFlow;
use std::time::Instant;

use super::{seed_partial, Outcome, PlacedCell, RuleSet, SearchLimits, SearchObserver, SearchStats, SolveResult};
use crate::check::verify_solution;
use crate::error::Result;
use crate::schedule::{build_initial_schedule, InitialSchedule, Match, ScheduleGrid, TeamCount};

/// How many assignments between two wall-clock checks.
const CLOCK_STRIDE: u64 = 1 << 12;

/// One decision of the search: cell `<period, week>` (0-based), plus the
/// mirror partner week that receives the same source period.
#[derive(Clone, Copy, Debug)]
struct Step {
    period: usize,
    week: usize,
    partner: Option<usize>,
}

/// A reusable search over one `(T, rule set)` pair.
#[derive(Clone, Debug)]
pub struct Solver {
    teams: TeamCount,
    rules: RuleSet,
    initial: InitialSchedule,
    steps: Vec<Step>,
}

impl Solver {
    pub fn new(teams: TeamCount, rules: RuleSet) -> Result<Self> {
        rules.validate(teams)?;
        let (periods, weeks) = (teams.periods(), teams.weeks());
        let searched = rules.searched_weeks(teams);
        let mut steps = Vec::with_capacity(periods * searched.len());
        for period in 0..periods {
            for &w in &searched {
                let partner = (rules.use_mirror && w < periods).then(|| weeks - w);
                steps.push(Step {
                    period,
                    week: w - 1,
                    partner,
                });
            }
        }
        Ok(Solver {
            teams,
            rules,
            initial: build_initial_schedule(teams),
            steps,
        })
    }

    pub fn teams(&self) -> TeamCount {
        self.teams
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    pub fn initial(&self) -> &InitialSchedule {
        &self.initial
    }

    /// Searches for the first schedule in candidate order.
    pub fn solve(&self, limits: SearchLimits) -> SolveResult {
        self.solve_observed(limits, &mut ())
    }

    pub fn solve_observed<O: SearchObserver>(&self, limits: SearchLimits, observer: &mut O) -> SolveResult {
        let mut found = None;
        let stats = self.run(limits, observer, |grid| {
            found = Some(grid.clone());
            ControlFlow::Break(())
        });
        if let Some(grid) = &found {
            let report = verify_solution(grid).expect("search output is complete");
            assert!(report.is_valid(), "search produced an invalid schedule:\n{report}");
        }
        SolveResult {
            schedule: found,
            stats,
        }
    }

    /// Visits every schedule reachable under the rule set, in search order.
    pub fn enumerate(
        &self,
        limits: SearchLimits,
        visit: impl FnMut(&ScheduleGrid) -> ControlFlow<()>,
    ) -> SearchStats {
        self.run(limits, &mut (), visit)
    }

    pub fn enumerate_observed<O: SearchObserver>(
        &self,
        limits: SearchLimits,
        observer: &mut O,
        visit: impl FnMut(&ScheduleGrid) -> ControlFlow<()>,
    ) -> SearchStats {
        self.run(limits, observer, visit)
    }

    fn run<O: SearchObserver>(
        &self,
        limits: SearchLimits,
        observer: &mut O,
        mut visit: impl FnMut(&ScheduleGrid) -> ControlFlow<()>,
    ) -> SearchStats {
        let start = Instant::now();
        let mut state = State::new(self);
        let mut stats = SearchStats {
            backtracks: 0,
            assignments: 0,
            elapsed: Default::default(),
            outcome: Outcome::Exhausted,
        };
        let deadline = limits.max_time.map(|d| start + d);
        let over_backtracks = |bt: u64| limits.max_backtracks.is_some_and(|max| bt > max);

        let steps = &self.steps;
        let n = steps.len();
        // `next[d]`: first source period still to try at depth `d`.
        let mut next = vec![0usize; n + 1];
        let mut chosen = vec![0usize; n];
        let mut depth = 0usize;

        stats.outcome = 'search: {
            if !state.seed_consistent {
                break 'search Outcome::Exhausted;
            }
            loop {
                if depth == n {
                    if visit(&state.grid(&self.initial)).is_break() {
                        break 'search Outcome::Solution;
                    }
                    if n == 0 {
                        break 'search Outcome::Exhausted;
                    }
                    depth -= 1;
                    state.undo(steps[depth], chosen[depth], observer, &self.initial);
                    stats.backtracks += 1;
                    if over_backtracks(stats.backtracks) {
                        break 'search Outcome::BacktrackLimit;
                    }
                    next[depth] = chosen[depth] + 1;
                    continue;
                }

                let step = steps[depth];
                let Some(src) = state.next_free(step.week, next[depth]) else {
                    // No match of this week left for the cell.
                    if depth == 0 {
                        break 'search Outcome::Exhausted;
                    }
                    depth -= 1;
                    state.undo(steps[depth], chosen[depth], observer, &self.initial);
                    stats.backtracks += 1;
                    if over_backtracks(stats.backtracks) {
                        break 'search Outcome::BacktrackLimit;
                    }
                    next[depth] = chosen[depth] + 1;
                    continue;
                };

                stats.assignments += 1;
                if stats.assignments % CLOCK_STRIDE == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
                    break 'search Outcome::TimeLimit;
                }
                if state.assign(step, src, observer, &self.initial) {
                    chosen[depth] = src;
                    depth += 1;
                    next[depth] = 0;
                } else {
                    // Locally rejected: not a backtrack.
                    state.undo(step, src, observer, &self.initial);
                    next[depth] = src + 1;
                }
            }
        };
        stats.elapsed = start.elapsed();
        stats
    }
}

/// Mutable search state. Teams are 1-based; periods, weeks and source
/// periods are 0-based.
struct State {
    teams: usize,
    periods: usize,
    weeks: usize,
    use_cd: bool,
    /// `source[w * periods + s]`: teams of the initial match `<s, w>`.
    source: Vec<[u16; 2]>,
    /// `placed[p * weeks + w]`: source period + 1 of the match at `<p, w>`,
    /// 0 when empty.
    placed: Vec<u16>,
    /// `used[w * periods + s]`: source period `s` of week `w` is placed.
    used: Vec<bool>,
    /// `counts[p * (teams + 1) + t]`: appearances of team `t` in period `p`.
    counts: Vec<u8>,
    /// Empty cells left in each period.
    open: Vec<usize>,
    /// `once_in[t]`: 1 + the completed period where team `t` plays exactly
    /// once, 0 if none yet.
    once_in: Vec<usize>,
    seed_consistent: bool,
}

impl State {
    fn new(solver: &Solver) -> Self {
        let teams = solver.teams.get() as usize;
        let (periods, weeks) = (solver.teams.periods(), solver.teams.weeks());
        let mut source = Vec::with_capacity(periods * weeks);
        for w in 1..=weeks {
            for s in 1..=periods {
                let m = solver.initial.at(s, w);
                source.push([m.home() as u16, m.away() as u16]);
            }
        }
        let mut state = State {
            teams,
            periods,
            weeks,
            use_cd: solver.rules.use_cd,
            source,
            placed: vec![0; periods * weeks],
            used: vec![false; periods * weeks],
            counts: vec![0; periods * (teams + 1)],
            open: vec![weeks; periods],
            once_in: vec![0; teams + 1],
            seed_consistent: true,
        };
        let seed = seed_partial(&solver.initial, &solver.rules);
        for (p, w, m) in seed.filled() {
            let s = solver
                .initial
                .source_period(w, m)
                .expect("seed cells come from their own week");
            state.place(p - 1, w - 1, s - 1);
        }
        state.seed_consistent = state.counts.iter().all(|&c| c <= 2);
        state
    }

    #[inline]
    fn next_free(&self, week: usize, from: usize) -> Option<usize> {
        let col = &self.used[week * self.periods..(week + 1) * self.periods];
        (from..self.periods).find(|&s| !col[s])
    }

    #[inline]
    fn place(&mut self, period: usize, week: usize, src: usize) {
        let [a, b] = self.source[week * self.periods + src];
        self.placed[period * self.weeks + week] = src as u16 + 1;
        self.used[week * self.periods + src] = true;
        let row = period * (self.teams + 1);
        self.counts[row + a as usize] += 1;
        self.counts[row + b as usize] += 1;
        self.open[period] -= 1;
    }

    #[inline]
    fn remove(&mut self, period: usize, week: usize, src: usize) {
        let [a, b] = self.source[week * self.periods + src];
        self.placed[period * self.weeks + week] = 0;
        self.used[week * self.periods + src] = false;
        let row = period * (self.teams + 1);
        self.counts[row + a as usize] -= 1;
        self.counts[row + b as usize] -= 1;
        self.open[period] += 1;
    }

    #[inline]
    fn capped(&self, period: usize, week: usize, src: usize) -> bool {
        let [a, b] = self.source[week * self.periods + src];
        let row = period * (self.teams + 1);
        self.counts[row + a as usize] <= 2 && self.counts[row + b as usize] <= 2
    }

    /// Writes the step's cell(s) and returns the local verdict.
    fn assign<O: SearchObserver>(&mut self, step: Step, src: usize, observer: &mut O, initial: &InitialSchedule) -> bool {
        self.place(step.period, step.week, src);
        if let Some(partner) = step.partner {
            self.place(step.period, partner, src);
        }
        let mut ok = self.capped(step.period, step.week, src)
            && step.partner.is_none_or(|partner| self.capped(step.period, partner, src));
        if ok && self.use_cd && self.open[step.period] == 0 {
            ok = self.close_period(step.period);
        }
        if observer.enabled() {
            observer.assigned(&cells(step, src, initial), ok);
        }
        ok
    }

    /// Distribution check on a period that just became full: every team
    /// plays in it, and a team playing only once has not already done so in
    /// an earlier period. Records the once-only teams on success.
    fn close_period(&mut self, period: usize) -> bool {
        let row = period * (self.teams + 1);
        let counts = &self.counts[row + 1..row + 1 + self.teams];
        let fits = counts.iter().enumerate().all(|(i, &c)| match c {
            0 => false,
            1 => self.once_in[i + 1] == 0,
            _ => true,
        });
        if fits {
            for (i, &c) in counts.iter().enumerate() {
                if c == 1 {
                    self.once_in[i + 1] = period + 1;
                }
            }
        }
        fits
    }

    fn undo<O: SearchObserver>(&mut self, step: Step, src: usize, observer: &mut O, initial: &InitialSchedule) {
        if self.use_cd && self.open[step.period] == 0 {
            let tag = step.period + 1;
            for mark in self.once_in.iter_mut().filter(|m| **m == tag) {
                *mark = 0;
            }
        }
        if let Some(partner) = step.partner {
            self.remove(step.period, partner, src);
        }
        self.remove(step.period, step.week, src);
        if observer.enabled() {
            observer.undone(&cells(step, src, initial));
        }
    }

    fn grid(&self, initial: &InitialSchedule) -> ScheduleGrid {
        let mut g = ScheduleGrid::empty(initial.teams());
        for p in 0..self.periods {
            for w in 0..self.weeks {
                let s = self.placed[p * self.weeks + w] as usize;
                if s > 0 {
                    g.set(p + 1, w + 1, Some(initial.at(s, w + 1)))
                        .expect("initial schedule ids are in range");
                }
            }
        }
        g
    }
}

fn cells(step: Step, src: usize, initial: &InitialSchedule) -> Vec<PlacedCell> {
    let at = |w: usize| -> (usize, usize, Match) { (step.period + 1, w + 1, initial.at(src + 1, w + 1)) };
    let mut out = vec![at(step.week)];
    if let Some(partner) = step.partner {
        out.push(at(partner));
    }
    out
}
