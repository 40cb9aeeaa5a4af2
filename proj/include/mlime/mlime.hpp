// Copyright 2026 The mlime Authors.
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

#include "mlime/assets.hpp"
#include "mlime/autogen.hpp"
#include "mlime/decode.hpp"
#include "mlime/error.hpp"
#include "mlime/layout.hpp"
#include "mlime/mixer.hpp"
#include "mlime/ngram.hpp"
#include "mlime/personal.hpp"
#include "mlime/profile.hpp"
#include "mlime/registry.hpp"
#include "mlime/service.hpp"
#include "mlime/session.hpp"
#include "mlime/text_pipeline.hpp"
#include "mlime/unicode.hpp"
