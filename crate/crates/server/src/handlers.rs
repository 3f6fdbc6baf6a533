use axum::extract::rejection::{JsonRejection, PathRejection};
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::Json;
use fakeyou_analytics::scores::normalized_scores;
use fakeyou_core::model::Phase;
use fakeyou_core::scoring::summarize;
use fakeyou_core::snapshot::SnapshotFilter;
use fakeyou_core::{Engine, GameError, GameId, PlayerId};

use crate::auth::Caller;
use crate::error::ApiError;
use crate::views::*;
use crate::AppState;

type ApiResult<T> = Result<Json<T>, ApiError>;

/// Runs engine work off the async workers; file-backed appends fsync.
async fn blocking<T: Send + 'static>(
    state: &AppState,
    work: impl FnOnce(&Engine) -> Result<T, ApiError> + Send + 'static,
) -> Result<T, ApiError> {
    let engine = state.engine.clone();
    tokio::task::spawn_blocking(move || work(&engine))
        .await
        .map_err(|e| {
            tracing::error!(error = %e, "handler task failed");
            ApiError::internal()
        })?
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    payload
        .map(|Json(v)| v)
        .map_err(|e| ApiError::invalid_body(e.body_text()))
}

fn round_path(path: Result<Path<(u64, usize)>, PathRejection>) -> Result<(GameId, usize), ApiError> {
    let Path((game, index)) = path.map_err(|_| ApiError::not_found())?;
    Ok((GameId(game), index))
}

fn game_path(path: Result<Path<u64>, PathRejection>) -> Result<GameId, ApiError> {
    let Path(game) = path.map_err(|_| ApiError::not_found())?;
    Ok(GameId(game))
}

pub async fn health() -> Json<HealthResponse> {
    Json(HealthResponse {
        status: "ok".into(),
    })
}

pub async fn not_found() -> ApiError {
    ApiError::not_found()
}

pub async fn register(
    State(state): State<AppState>,
    payload: Result<Json<RegisterRequest>, JsonRejection>,
) -> Result<(StatusCode, Json<RegisterResponse>), ApiError> {
    let request = body(payload)?;
    let (player, token) = blocking(&state, move |engine| Ok(engine.register_player(&request.alias)?)).await?;
    Ok((
        StatusCode::CREATED,
        Json(RegisterResponse {
            player,
            token: token.token,
        }),
    ))
}

pub async fn lobby(State(state): State<AppState>, Caller(me): Caller) -> ApiResult<LobbyResponse> {
    let response = state.engine.read(|ledger| {
        let mut games: Vec<LobbyGame> = ledger
            .games_of(me)
            .iter()
            .filter_map(|id| ledger.game(*id))
            .map(|game| LobbyGame {
                id: game.game_id,
                status: game.status,
                created_at: game.created_at,
                finished_at: game.finished_at,
                your_turn_hints: turn_hints(game, &ledger.rounds_of(game), me),
            })
            .collect();
        games.reverse();
        LobbyResponse {
            player_id: me,
            queue_position: ledger.queue_position(me),
            games,
        }
    });
    Ok(Json(response))
}

pub async fn queue(State(state): State<AppState>, Caller(me): Caller) -> ApiResult<QueueResponse> {
    blocking(&state, move |engine| {
        engine.enqueue(me)?;
        match engine.matchmake() {
            Ok(_) => {}
            // stay queued; maintenance retries once articles arrive
            Err(GameError::InsufficientArticles { needed, available }) => {
                tracing::warn!(needed, available, "matchmaking waits for articles")
            }
            Err(e) => return Err(e.into()),
        }
        Ok(engine.read(|ledger| QueueResponse {
            position: ledger.queue_position(me),
            game_id: ledger.active_game(me),
        }))
    })
    .await
    .map(Json)
}

pub async fn game(
    State(state): State<AppState>,
    Caller(me): Caller,
    path: Result<Path<u64>, PathRejection>,
) -> ApiResult<GameView> {
    let id = game_path(path)?;
    let prefix = state.image_prefix.clone();
    let view = state.engine.read(|ledger| {
        let game = ledger.game(id).ok_or(GameError::UnknownGame(id))?;
        if !game.is_member(me) {
            return Err(GameError::NotMember);
        }
        Ok(GameView {
            game_id: game.game_id,
            status: game.status,
            created_at: game.created_at,
            finished_at: game.finished_at,
            players: game
                .player_ids
                .iter()
                .map(|&player_id| Seat {
                    player_id,
                    alias: ledger.player(player_id).map(|p| p.alias.clone()).unwrap_or_default(),
                })
                .collect(),
            rounds: ledger
                .rounds_of(game)
                .into_iter()
                .map(|r| round_view(r, me, &prefix))
                .collect(),
        })
    })?;
    Ok(Json(view))
}

pub async fn submit_fake(
    State(state): State<AppState>,
    Caller(me): Caller,
    path: Result<Path<(u64, usize)>, PathRejection>,
    payload: Result<Json<FakeRequest>, JsonRejection>,
) -> ApiResult<RoundView> {
    let (id, index) = round_path(path)?;
    let request = body(payload)?;
    let prefix = state.image_prefix.clone();
    blocking(&state, move |engine| {
        let round = engine.submit_fake(id, index, me, &request.text)?;
        Ok(round_view(&round, me, &prefix))
    })
    .await
    .map(Json)
}

pub async fn options(
    State(state): State<AppState>,
    Caller(me): Caller,
    path: Result<Path<(u64, usize)>, PathRejection>,
) -> ApiResult<OptionsResponse> {
    let (id, index) = round_path(path)?;
    blocking(&state, move |engine| {
        let set = engine.get_options(id, index, me)?;
        Ok(OptionsResponse {
            round_index: index as u8,
            options: set.texts().into_iter().map(String::from).collect(),
        })
    })
    .await
    .map(Json)
}

pub async fn bet(
    State(state): State<AppState>,
    Caller(me): Caller,
    path: Result<Path<(u64, usize)>, PathRejection>,
    payload: Result<Json<BetRequest>, JsonRejection>,
) -> ApiResult<RoundView> {
    let (id, index) = round_path(path)?;
    let request = body(payload)?;
    let prefix = state.image_prefix.clone();
    blocking(&state, move |engine| {
        let position = usize::try_from(request.position).unwrap_or(usize::MAX);
        let round = engine.place_bet(id, index, me, position)?;
        Ok(round_view(&round, me, &prefix))
    })
    .await
    .map(Json)
}

pub async fn results(
    State(state): State<AppState>,
    Caller(me): Caller,
    path: Result<Path<u64>, PathRejection>,
) -> ApiResult<ResultsResponse> {
    let id = game_path(path)?;
    let response = state.engine.read(|ledger| {
        let game = ledger.game(id).ok_or(GameError::UnknownGame(id))?;
        if !game.is_member(me) {
            return Err(ApiError::from(GameError::NotMember));
        }
        let rounds = ledger.rounds_of(game);
        if rounds
            .iter()
            .any(|r| r.phase == Phase::Betting && !r.bets.contains_key(&me))
        {
            return Err(ApiError::results_withheld());
        }
        let summary = summarize(game, rounds.iter().copied());
        let alias = |p: PlayerId| ledger.player(p).map(|p| p.alias.clone()).unwrap_or_default();
        Ok(ResultsResponse {
            game_id: id,
            rounds: rounds
                .iter()
                .map(|r| RoundResult {
                    index: r.index,
                    phase: r.phase,
                    reveal: reveal(r),
                })
                .collect(),
            summary: summary_view(&summary, alias),
        })
    })?;
    Ok(Json(response))
}

pub async fn stats(State(state): State<AppState>, Caller(me): Caller) -> ApiResult<StatsResponse> {
    blocking(&state, move |engine| {
        let player = engine.player(me)?;
        let snapshot = engine.snapshot(&SnapshotFilter::for_player(me));
        let normalized = normalized_scores(&snapshot)
            .into_iter()
            .find(|p| p.player_id == me);
        Ok(StatsResponse {
            player_id: me,
            alias: player.alias,
            games_played: player.games_played,
            rounds_played: player.rounds_played,
            total_fake_points: player.total_fake_points,
            total_bet_points: player.total_bet_points,
            norm_fake: normalized.as_ref().map(|p| p.norm_fake),
            norm_bet: normalized.as_ref().map(|p| p.norm_bet),
        })
    })
    .await
    .map(Json)
}
