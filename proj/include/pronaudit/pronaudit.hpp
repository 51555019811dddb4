/* Copyright 2026 The pronaudit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include "pronaudit/classifier.hpp"
#include "pronaudit/corpus.hpp"
#include "pronaudit/error.hpp"
#include "pronaudit/lexicon.hpp"
#include "pronaudit/placeholder.hpp"
#include "pronaudit/report.hpp"
#include "pronaudit/rewriter.hpp"
#include "pronaudit/review_service.hpp"
#include "pronaudit/stats.hpp"
#include "pronaudit/tokenizer.hpp"
