//! HTTP routes. Request and response bodies are JSON except the report,
//! which is returned as `application/pdf`.

use std::sync::Arc;

use axum::extract::{FromRequestParts, Path, Query, State};
use axum::http::header::{AUTHORIZATION, CONTENT_DISPOSITION, CONTENT_TYPE};
use axum::http::request::Parts;
use axum::http::{HeaderName, HeaderValue};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use chrono::NaiveDate;
use docket_core::access::Principal;
use docket_core::case::{
    AuditEvent, CaseStatus, CaseType, Complaint, LaborCase, OfficeId, SenaCase, SenaOutcome, Timestamp,
};
use docket_core::report::{OfficeScope, Period, ReportRequest};
use serde::Deserialize;

use crate::error::ApiError;
use crate::service::{Docket, LoginGrant, NewComplaint, TrackView};

pub type AppState = Arc<Docket>;

/// Every route as `(method, path)`. The only ones reachable without a
/// session are `POST /api/login` and `GET /track/{case_number}`.
pub const ENDPOINTS: &[(&str, &str)] = &[
    ("POST", "/api/login"),
    ("POST", "/api/logout"),
    ("GET", "/api/complaints"),
    ("POST", "/api/complaints"),
    ("POST", "/api/complaints/{id}/assign"),
    ("GET", "/api/sena"),
    ("POST", "/api/sena/{id}/conclude"),
    ("GET", "/api/cases"),
    ("POST", "/api/cases"),
    ("POST", "/api/cases/{no}/status"),
    ("POST", "/api/cases/{no}/reraffle"),
    ("POST", "/api/reports"),
    ("GET", "/api/audit"),
    ("GET", "/track/{case_number}"),
];

pub const TOTAL_COUNT: HeaderName = HeaderName::from_static("x-total-count");

pub fn router(docket: AppState) -> Router {
    Router::new()
        .route("/api/login", post(login))
        .route("/api/logout", post(logout))
        .route("/api/complaints", get(list_complaints).post(file_complaint))
        .route("/api/complaints/{id}/assign", post(assign))
        .route("/api/sena", get(list_sena))
        .route("/api/sena/{id}/conclude", post(conclude))
        .route("/api/cases", get(list_cases).post(docket_case))
        .route("/api/cases/{no}/status", post(update_status))
        .route("/api/cases/{no}/reraffle", post(re_raffle))
        .route("/api/reports", post(report))
        .route("/api/audit", get(audit))
        .route("/track/{case_number}", get(track))
        .with_state(docket)
}

/// The caller's session. Listed first in every protected handler so a
/// missing or stale token is reported before anything about the target.
pub struct Auth(pub Principal);

impl FromRequestParts<AppState> for Auth {
    type Rejection = ApiError;

    async fn from_request_parts(parts: &mut Parts, state: &AppState) -> Result<Self, Self::Rejection> {
        let token = bearer(parts).ok_or(ApiError::Unauthenticated)?;
        state.principal(token).map(Auth)
    }
}

fn bearer(parts: &Parts) -> Option<&str> {
    let value = parts.headers.get(AUTHORIZATION)?.to_str().ok()?;
    value.strip_prefix("Bearer ").map(str::trim).filter(|t| !t.is_empty())
}

async fn blocking<T: Send + 'static>(
    job: impl FnOnce() -> Result<T, ApiError> + Send + 'static,
) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(job).await.unwrap_or_else(|e| std::panic::resume_unwind(e.into_panic()))
}

#[derive(Deserialize)]
struct LoginBody {
    username: String,
    password: String,
}

async fn login(State(docket): State<AppState>, Json(body): Json<LoginBody>) -> Result<Json<LoginGrant>, ApiError> {
    blocking(move || docket.login(&body.username, &body.password)).await.map(Json)
}

async fn logout(Auth(_): Auth, State(docket): State<AppState>, parts: axum::http::HeaderMap) -> impl IntoResponse {
    if let Some(token) = parts
        .get(AUTHORIZATION)
        .and_then(|v| v.to_str().ok())
        .and_then(|v| v.strip_prefix("Bearer "))
    {
        docket.sessions().revoke(token.trim());
    }
    axum::http::StatusCode::NO_CONTENT
}

async fn list_complaints(Auth(p): Auth, State(docket): State<AppState>) -> Result<Json<Vec<Complaint>>, ApiError> {
    blocking(move || docket.list_complaints(&p)).await.map(Json)
}

async fn file_complaint(
    Auth(p): Auth,
    State(docket): State<AppState>,
    Json(body): Json<NewComplaint>,
) -> Result<(axum::http::StatusCode, Json<Complaint>), ApiError> {
    let filed = blocking(move || docket.file_complaint(&p, body, Timestamp::now())).await?;
    Ok((axum::http::StatusCode::CREATED, Json(filed)))
}

#[derive(Deserialize)]
struct AssignBody {
    officer: String,
}

async fn assign(
    Auth(p): Auth,
    State(docket): State<AppState>,
    Path(id): Path<String>,
    Json(body): Json<AssignBody>,
) -> Result<Json<SenaCase>, ApiError> {
    blocking(move || docket.assign(&p, &id, &body.officer, Timestamp::now())).await.map(Json)
}

#[derive(Deserialize)]
struct SenaQuery {
    officer: Option<String>,
}

async fn list_sena(
    Auth(p): Auth,
    State(docket): State<AppState>,
    Query(q): Query<SenaQuery>,
) -> Result<Json<Vec<SenaCase>>, ApiError> {
    let officer = q.officer.unwrap_or_else(|| "me".to_owned());
    blocking(move || docket.list_sena(&p, &officer)).await.map(Json)
}

#[derive(Deserialize)]
struct ConcludeBody {
    outcome: SenaOutcome,
    minutes: String,
}

async fn conclude(
    Auth(p): Auth,
    State(docket): State<AppState>,
    Path(id): Path<String>,
    Json(body): Json<ConcludeBody>,
) -> Result<Json<SenaCase>, ApiError> {
    blocking(move || docket.conclude(&p, &id, body.outcome, &body.minutes, Timestamp::now())).await.map(Json)
}

#[derive(Deserialize)]
struct CasesQuery {
    office: Option<u32>,
}

async fn list_cases(
    Auth(p): Auth,
    State(docket): State<AppState>,
    Query(q): Query<CasesQuery>,
) -> Result<Json<Vec<LaborCase>>, ApiError> {
    blocking(move || docket.list_cases(&p, q.office.map(OfficeId))).await.map(Json)
}

#[derive(Deserialize)]
struct DocketBody {
    dispute_id: String,
    case_type: CaseType,
    seed: Option<u64>,
}

async fn docket_case(
    Auth(p): Auth,
    State(docket): State<AppState>,
    Json(body): Json<DocketBody>,
) -> Result<(axum::http::StatusCode, Json<LaborCase>), ApiError> {
    let case = blocking(move || docket.docket(&p, &body.dispute_id, body.case_type, body.seed, Timestamp::now()))
        .await?;
    Ok((axum::http::StatusCode::CREATED, Json(case)))
}

#[derive(Deserialize)]
struct StatusBody {
    status: CaseStatus,
    minutes: String,
}

async fn update_status(
    Auth(p): Auth,
    State(docket): State<AppState>,
    Path(no): Path<String>,
    Json(body): Json<StatusBody>,
) -> Result<Json<LaborCase>, ApiError> {
    blocking(move || docket.update_status(&p, &no, body.status, &body.minutes, Timestamp::now())).await.map(Json)
}

#[derive(Deserialize)]
struct ReRaffleBody {
    office: u32,
    reason: String,
}

async fn re_raffle(
    Auth(p): Auth,
    State(docket): State<AppState>,
    Path(no): Path<String>,
    Json(body): Json<ReRaffleBody>,
) -> Result<Json<LaborCase>, ApiError> {
    blocking(move || docket.re_raffle(&p, &no, OfficeId(body.office), &body.reason, Timestamp::now()))
        .await
        .map(Json)
}

#[derive(Deserialize)]
struct ReportBody {
    case_type: CaseType,
    remark: CaseStatus,
    from: NaiveDate,
    to: NaiveDate,
    /// Office number or `"ALL"`; defaults to the caller's office.
    office: Option<OfficeScope>,
}

async fn report(
    Auth(p): Auth,
    State(docket): State<AppState>,
    Json(body): Json<ReportBody>,
) -> Result<Response, ApiError> {
    let scope = match body.office {
        Some(scope) => scope,
        None => p.office.map(OfficeScope::Office).ok_or(ApiError::Forbidden)?,
    };
    let request = ReportRequest {
        case_type: body.case_type,
        remark: body.remark,
        period: Period::new(body.from, body.to)?,
        scope,
    };
    let doc = blocking(move || docket.report(&p, &request, Timestamp::now())).await?;
    let filename = format!("attachment; filename=\"{}-{}.pdf\"", doc.header.case_type, doc.header.remark);
    let mut response = doc.rendered.into_response();
    let headers = response.headers_mut();
    headers.insert(CONTENT_TYPE, HeaderValue::from_static("application/pdf"));
    headers.insert(TOTAL_COUNT, HeaderValue::from(doc.total_count));
    if let Ok(v) = HeaderValue::from_str(&filename) {
        headers.insert(CONTENT_DISPOSITION, v);
    }
    Ok(response)
}

async fn audit(Auth(p): Auth, State(docket): State<AppState>) -> Result<Json<Vec<AuditEvent>>, ApiError> {
    blocking(move || docket.audit_log(&p)).await.map(Json)
}

async fn track(State(docket): State<AppState>, Path(number): Path<String>) -> Result<Json<TrackView>, ApiError> {
    blocking(move || docket.track(&number)).await.map(Json)
}

/// Binds `addr` and serves until Ctrl-C. Idle sessions are swept once a
/// minute.
pub async fn serve(docket: AppState, addr: std::net::SocketAddr) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(addr = %listener.local_addr()?, "listening");
    let sweeper = {
        let docket = docket.clone();
        tokio::spawn(async move {
            let mut tick = tokio::time::interval(std::time::Duration::from_secs(60));
            loop {
                tick.tick().await;
                docket.sessions().sweep();
            }
        })
    };
    axum::serve(listener, router(docket))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    sweeper.abort();
    Ok(())
}
