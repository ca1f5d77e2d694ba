use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{validate_move, Configuration, Point, Roadmap, VertexId};
use crate::mrdrrt::SampleSpace;
use crate::scalar::Scalar;

/// Angle at `from` between the rays towards `target` and towards `option`.
///
/// Staying put scores 0 when the target coincides with `from` and a right
/// angle otherwise, so it beats any move that turns away from the target.
/// Any move scores a right angle when the target coincides with `from`.
pub fn steering_angle<S: Scalar>(from: Point<S>, target: Point<S>, option: Point<S>) -> S {
    let half_pi = S::of(std::f64::consts::FRAC_PI_2);
    let (tx, ty) = (target.x - from.x, target.y - from.y);
    let (ox, oy) = (option.x - from.x, option.y - from.y);
    let target_is_here = tx == S::zero() && ty == S::zero();
    let option_is_here = ox == S::zero() && oy == S::zero();
    match (target_is_here, option_is_here) {
        (true, true) => S::zero(),
        (true, false) | (false, true) => half_pi,
        (false, false) => {
            let cross = tx * oy - ty * ox;
            let dot = tx * ox + ty * oy;
            cross.abs().atan2(dot)
        }
    }
}

/// Steers configuration `from` one composite step towards `target`.
///
/// Agents are visited in random order. Each picks, among staying and its
/// neighbours, the option with the smallest steering angle that neither lands
/// on a vertex already claimed this step nor swaps with an agent processed
/// earlier. Ties go to the shorter step, then the smaller vertex id. With
/// `restrict`, moves are limited to each agent's admissible vertices.
/// Returns `None` when some agent has no usable option.
pub fn oracle_extend<S: Scalar, R: Rng + ?Sized>(
    from: &Configuration,
    target: &[VertexId],
    map: &Roadmap<S>,
    restrict: Option<&SampleSpace<S>>,
    rng: &mut R,
) -> Option<Configuration> {
    let k = from.agent_count();
    debug_assert_eq!(target.len(), k);
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(rng);
    let mut chosen: Vec<Option<VertexId>> = vec![None; k];
    let points = map.points();

    for &agent in &order {
        let here = from[agent];
        let aim = points[target[agent]];
        let mut best: Option<(S, S, VertexId)> = None;
        let options = std::iter::once(here).chain(map.neighbors(here).iter().copied());
        for option in options {
            if option != here && restrict.is_some_and(|s| !s.is_admissible(agent, option)) {
                continue;
            }
            let collides = order.iter().take_while(|&&j| j != agent).any(|&j| {
                let claimed = chosen[j].expect("processed earlier");
                claimed == option || (option != here && claimed == here && from[j] == option)
            });
            if collides {
                continue;
            }
            let key = (
                steering_angle(points[here], aim, points[option]),
                map.length(here, option),
                option,
            );
            let better = match &best {
                None => true,
                Some(current) => compare_keys(&key, current) == Ordering::Less,
            };
            if better {
                best = Some(key);
            }
        }
        chosen[agent] = Some(best?.2);
    }

    let positions: Vec<VertexId> = chosen.into_iter().map(|c| c.expect("all chosen")).collect();
    validate_move(from, &positions, map).ok()?;
    Some(Configuration::from_vec_unchecked(positions))
}

fn compare_keys<S: Scalar>(a: &(S, S, VertexId), b: &(S, S, VertexId)) -> Ordering {
    a.0.partial_cmp(&b.0)
        .unwrap_or(Ordering::Equal)
        .then(a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal))
        .then(a.2.cmp(&b.2))
}
