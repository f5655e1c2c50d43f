use crate::sum::CompensatedSum;
use crate::Group;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    InDegree,
    OutDegree,
    Coreness,
    Shapley,
    InfluenceDegree,
    Rank,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::InDegree => "in-degree",
            Metric::OutDegree => "out-degree",
            Metric::Coreness => "coreness",
            Metric::Shapley => "shapley",
            Metric::InfluenceDegree => "influence-degree",
            Metric::Rank => "rank",
        }
    }
}

/// Per-group arithmetic means; `None` when the group has no members.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupAverages {
    pub regular: Option<f64>,
    pub troll: Option<f64>,
}

impl GroupAverages {
    pub fn get(&self, group: Group) -> Option<f64> {
        match group {
            Group::Regular => self.regular,
            Group::Troll => self.troll,
        }
    }
}

pub fn group_averages<I>(values: I) -> GroupAverages
where
    I: IntoIterator<Item = (Group, f64)>,
{
    let mut sums = [CompensatedSum::new(), CompensatedSum::new()];
    let mut counts = [0usize; 2];
    for (g, v) in values {
        let i = g as usize;
        sums[i].add(v);
        counts[i] += 1;
    }
    let mean = |i: usize| (counts[i] > 0).then(|| sums[i].value() / counts[i] as f64);
    GroupAverages {
        regular: mean(Group::Regular as usize),
        troll: mean(Group::Troll as usize),
    }
}
