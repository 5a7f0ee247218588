// Copyright 2026 The MoD Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "mod/embed/embedder.hpp"
#include "mod/error.hpp"
#include "mod/graph/event_graph.hpp"
#include "mod/graph/jsonld.hpp"
#include "mod/ingest/article.hpp"
#include "mod/ingest/fetch.hpp"
#include "mod/ingest/normalize.hpp"
#include "mod/linking/gazetteer.hpp"
#include "mod/linking/remote.hpp"
#include "mod/linking/wikimap.hpp"
#include "mod/service/config.hpp"
#include "mod/service/pipeline.hpp"
#include "mod/service/server.hpp"
#include "mod/service/store.hpp"
#include "mod/typing/prototypes.hpp"
#include "mod/viz/dbscan.hpp"
#include "mod/viz/pca.hpp"
#include "mod/viz/views.hpp"
