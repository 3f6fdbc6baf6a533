#![allow(dead_code)]

use std::net::SocketAddr;
use std::sync::Arc;

use chrono::{NaiveDate, TimeZone, Utc};
use fakeyou_core::clock::SystemClock;
use fakeyou_core::model::NewArticle;
use fakeyou_core::store::{MemoryStore, Storage};
use fakeyou_core::{Engine, EngineConfig};
use fakeyou_server::{router, ServerConfig, DEFAULT_IMAGE_PREFIX};
use reqwest::StatusCode;
use serde_json::Value;

pub struct Server {
    pub addr: SocketAddr,
    pub engine: Arc<Engine>,
    pub http: reqwest::Client,
    _images: tempfile::TempDir,
}

pub fn article(i: usize) -> NewArticle {
    NewArticle {
        headline: format!("Bundestag debattiert Vorlage {i}"),
        image_ref: format!("img/{i}.png"),
        source_url: format!("https://news.example/{i}"),
        published_date: NaiveDate::from_ymd_opt(2020, 5, 1).unwrap(),
        language: "de".into(),
        source_name: "fixture".into(),
        ingested_at: Utc.with_ymd_and_hms(2020, 6, 1, 0, 0, 0).unwrap(),
    }
}

pub async fn start(n_articles: usize) -> Server {
    let images = tempfile::tempdir().unwrap();
    std::fs::create_dir_all(images.path().join("img")).unwrap();
    for i in 0..n_articles {
        std::fs::write(images.path().join(format!("img/{i}.png")), format!("image-{i}")).unwrap();
    }
    let store: Arc<dyn Storage> = Arc::new(MemoryStore::with_articles((0..n_articles).map(article)));
    let engine = Arc::new(
        Engine::open(store, Arc::new(SystemClock), EngineConfig { seed: 5, ..EngineConfig::default() }).unwrap(),
    );
    let app = router(
        engine.clone(),
        &ServerConfig {
            image_dir: images.path().to_path_buf(),
            image_prefix: DEFAULT_IMAGE_PREFIX.into(),
        },
    );
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(fakeyou_server::serve(listener, app, std::future::pending()));
    Server {
        addr,
        engine,
        http: reqwest::Client::new(),
        _images: images,
    }
}

#[derive(Debug, Clone)]
pub struct Reply {
    pub status: StatusCode,
    pub raw: String,
    pub json: Value,
}

impl Reply {
    pub fn code(&self) -> &str {
        self.json["code"].as_str().unwrap_or("")
    }
}

impl Server {
    pub fn url(&self, path: &str) -> String {
        format!("http://{}{}", self.addr, path)
    }

    pub async fn send(&self, method: &str, path: &str, token: Option<&str>, body: Option<Value>) -> Reply {
        let mut request = match method {
            "GET" => self.http.get(self.url(path)),
            "POST" => self.http.post(self.url(path)),
            other => panic!("method {other}"),
        };
        if let Some(token) = token {
            request = request.bearer_auth(token);
        }
        if let Some(body) = body {
            request = request.json(&body);
        }
        let response = request.send().await.unwrap();
        let status = response.status();
        let raw = response.text().await.unwrap();
        let json = serde_json::from_str(&raw).unwrap_or(Value::Null);
        Reply { status, raw, json }
    }

    pub async fn register(&self, alias: &str) -> Client<'_> {
        let reply = self
            .send("POST", "/players", None, Some(serde_json::json!({ "alias": alias })))
            .await;
        assert_eq!(reply.status, StatusCode::CREATED, "{}", reply.raw);
        Client {
            server: self,
            token: reply.json["token"].as_str().unwrap().to_string(),
            player_id: reply.json["player"]["player_id"].as_u64().unwrap(),
        }
    }
}

/// One authenticated player. Every reply is kept for later inspection.
pub struct Client<'a> {
    pub server: &'a Server,
    pub token: String,
    pub player_id: u64,
}

impl Client<'_> {
    pub async fn get(&self, path: &str) -> Reply {
        self.server.send("GET", path, Some(&self.token), None).await
    }

    pub async fn post(&self, path: &str, body: Value) -> Reply {
        self.server.send("POST", path, Some(&self.token), Some(body)).await
    }
}
