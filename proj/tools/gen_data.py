#!/usr/bin/env python3
# Copyright 2026 The mlime Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the sample language assets and registry under data/.

Corpora are small illustrative samples assembled from short phrase lists;
they are demo material, not linguistic resources. Output is deterministic.
"""

import argparse
import json
import pathlib
import random
import unicodedata

QWERTY = ["qwertyuiop", "asdfghjkl", "zxcvbnm"]
QWERTZ = ["qwertzuiop", "asdfghjkl", "yxcvbnm"]
RUSSIAN = ["йцукенгшщзхъ", "фывапролджэ", "ячсмитьбюё"]
YAKUT_EXTRA = ["ҕ", "ҥ", "ө", "һ", "ү"]

DIGITS_ON_TOP = dict(zip("qwertyuiop", "1234567890"))


def nfc(s):
  return unicodedata.normalize("NFC", s)


def cased_inventory(tag, letters, optional=()):
  required = set()
  for g in letters:
    required.add(g)
    if g.upper() != g and len(g.upper()) == 1:
      required.add(g.upper())
  opt = set()
  for g in optional:
    if g in required:
      continue
    opt.add(g)
    if g.upper() != g and len(g.upper()) == 1 and g.upper() not in required:
      opt.add(g.upper())
  return {"language_tag": tag, "required": sorted(required),
          "optional_loanword": sorted(opt)}


def grid_layout(tag, script, base_grid, rows, long_press=None, width=None,
                digits=False, extra_rows=()):
  long_press = long_press or {}
  all_rows = [list(r) for r in rows] + [list(r) for r in extra_rows]
  longest = max(len(r) for r in all_rows)
  width = width or min(0.1, 1.0 / longest)
  keys = []
  offsets = []
  for r, row in enumerate(all_rows):
    offsets.append(round((1.0 - width * len(row)) / 2.0, 12))
    for c, g in enumerate(row):
      key = {"id": g, "row": r, "col": c, "width": width, "output": g,
             "face": g}
      if g.upper() != g and len(g.upper()) == 1:
        key["shift"] = g.upper()
      lp = list(long_press.get(g, []))
      lp += [c.upper() for c in lp if c.upper() != c and len(c.upper()) == 1]
      if digits and g in DIGITS_ON_TOP:
        lp.append(DIGITS_ON_TOP[g])
      if lp:
        key["long_press"] = lp
      keys.append(key)
  return {"format": "mlime-layout/1", "layout_id": f"{tag}-{base_grid}",
          "language_tag": tag, "script": script, "base_grid": base_grid,
          "version": 1, "pages": [{"keys": keys, "row_offsets": offsets}],
          "rules": []}


# ---------------------------------------------------------------------------
# Devanagari

HI_VOWELS = list("अआइईउऊएऐओऔ")
HI_CONSONANTS = list("कखगघचछजझटठडढणतथदधनपफबभमयरलवशषसहङञ")
HI_SIGNS = ["ा", "ि", "ी", "ु", "ू", "ृ", "े", "ै", "ो", "ौ"]
HI_MODS = ["ं", "ँ", "्"]


def hindi_layout():
  rows = [HI_VOWELS, HI_CONSONANTS[0:10], HI_CONSONANTS[10:20],
          HI_CONSONANTS[20:30], HI_CONSONANTS[30:]]
  width = 0.1
  keys = []
  offsets = []
  for r, row in enumerate(rows):
    offsets.append(round((1.0 - width * len(row)) / 2.0, 12))
    for c, g in enumerate(row):
      keys.append({"id": g, "row": r, "col": c, "width": width, "output": g,
                   "face": g})
  # Dynamic vowel-sign row: blank until a consonant precedes the cursor.
  dyn = HI_SIGNS + HI_MODS
  sign_row = len(rows)
  per_row = 7
  for i, s in enumerate(dyn):
    r = sign_row + i // per_row
    keys.append({"id": "v" + str(i), "row": r, "col": i % per_row,
                 "width": width, "output": "", "face": ""})
  offsets.append(round((1.0 - width * per_row) / 2.0, 12))
  offsets.append(round((1.0 - width * (len(dyn) - per_row)) / 2.0, 12))
  rules = []
  for i, s in enumerate(HI_SIGNS):
    rules.append({"context": ["@C"], "key": "v" + str(i), "output": s,
                  "face": "{}" + s})
  for j, s in enumerate(HI_MODS):
    key = "v" + str(len(HI_SIGNS) + j)
    contexts = [["@C"]] if s == "्" else [["@C"], ["@M"], ["@V"]]
    for ctx in contexts:
      rules.append({"context": ctx, "key": key, "output": s, "face": "{}" + s})
  return {"format": "mlime-layout/1", "layout_id": "hi-deva-dynamic",
          "language_tag": "hi", "script": "Deva",
          "base_grid": "script_native", "version": 1,
          "pages": [{"keys": keys, "row_offsets": offsets}],
          "rules": rules,
          "classes": {"C": HI_CONSONANTS, "M": HI_SIGNS, "V": HI_VOWELS},
          "inventory": HI_SIGNS + HI_MODS}


# ---------------------------------------------------------------------------
# Corpora

def template_corpus(seed, subjects, verbs, objects, extras, n):
  rng = random.Random(seed)
  lines = []
  for _ in range(n):
    parts = [rng.choice(subjects), rng.choice(verbs), rng.choice(objects)]
    if rng.random() < 0.5:
      parts.append(rng.choice(extras))
    lines.append(" ".join(parts))
  return lines


EN_SENTENCES = [
    "the quick brown fox jumps over the lazy dog",
    "i think we should meet tomorrow morning",
    "thank you for your message",
    "see you later at the station",
    "what time is the meeting today",
    "i am on my way home now",
    "can you send me the file please",
    "that sounds like a great idea",
    "let me know when you are ready",
    "we are going to the market this weekend",
    "the weather is very nice today",
    "please call me when you get this",
    "i will be there in ten minutes",
    "have a good night and sleep well",
    "my phone battery is almost dead",
    "the children are playing in the garden",
    "she reads a book every evening",
    "they walked along the river after dinner",
    "he wrote a long letter to his mother",
    "do you want to have lunch together",
]
EN_SUBJECTS = ["i", "you", "we", "they", "my friend", "the teacher", "our team",
               "the children", "she", "he", "my sister", "the doctor"]
EN_VERBS = ["like", "want", "need", "have", "see", "know", "make", "bring",
            "find", "take", "love", "read", "write", "send", "call", "help"]
EN_OBJECTS = ["the book", "a letter", "some water", "the money", "the house",
              "a new phone", "the answer", "this message", "the keyboard",
              "the language", "a good idea", "the people", "the world",
              "the story", "a little time", "their friends", "the school",
              "the weather", "the music", "the picture"]
EN_EXTRAS = ["today", "tomorrow", "again", "every day", "right now",
             "after work", "before dinner", "this morning", "at home",
             "with them", "for you", "because of the rain", "very much"]

RU_SENTENCES = [
    "я иду домой", "мы читаем книгу", "она пишет письмо",
    "это хороший день", "ёлка стоит в лесу", "сегодня тёплая погода",
    "где ты живёшь", "спасибо за помощь", "мой брат работает в городе",
    "дети играют во дворе", "завтра мы поедем на море",
    "я люблю читать вечером", "позвони мне когда будешь дома",
]
RU_SUBJECTS = ["я", "ты", "мы", "они", "она", "он", "мой друг", "наша семья",
               "учитель", "дети"]
RU_VERBS = ["читает", "пишет", "видит", "знает", "любит", "ищет", "берёт",
            "делает", "ждёт", "слушает"]
RU_OBJECTS = ["книгу", "письмо", "дом", "воду", "музыку", "ответ", "город",
              "друга", "язык", "новости", "ёжика", "картину"]
RU_EXTRAS = ["сегодня", "завтра", "вечером", "утром", "опять", "дома",
             "всегда", "очень часто"]

SAH_SENTENCES = [
    "мин саха тылын үөрэтэбин", "оҕо дьиэҕэ олорор", "аҕам үлэҕэ барда",
    "баһыыба эйиэхэ", "бүгүн күн үчүгэй", "биһиги өрүскэ бардыбыт",
    "кини маҥан ат көрдө", "эн хайдах олороҕун", "кыыс уонна уол ооньууллар",
    "саха сирэ улахан", "сөп буоллун", "ыал аһыыр",
]
SAH_SUBJECTS = ["мин", "эн", "кини", "биһиги", "оҕо", "аҕам", "кыыс", "уол",
                "ыал", "учуутал"]
SAH_VERBS = ["көрөр", "билэр", "таптыыр", "аһыыр", "үөрэтэр", "суруйар",
             "ааҕар", "истэр"]
SAH_OBJECTS = ["кинигэни", "дьиэни", "ууну", "өрүһү", "тылы", "ырыаны",
               "оҕону", "маҥан аты", "күөх оту", "аҥаары"]
SAH_EXTRAS = ["бүгүн", "сарсын", "киэһэ", "сарсыарда", "өссө", "дьиэҕэ",
              "куруук"]

KR_SENTENCES = [
    "wu bəla lan ngəla", "shi kasuwu ro lejin", "andi fato lan ngəla",
    "tada kəla dəgəl", "sandi bəla ro lejin", "nyi kam ngəla",
]
KR_SUBJECTS = ["wu", "nyi", "shi", "andi", "nandi", "sandi", "tada", "kam"]
KR_VERBS = ["lejin", "rəkin", "ngəla", "kəla", "cidin", "bəlin", "jəmin"]
KR_OBJECTS = ["bəla", "kasuwu", "fato", "kəri", "nəm", "tada", "ngawo",
              "kəndə", "dəgəl", "kərmai"]
KR_EXTRAS = ["ro", "lan", "ye", "yim", "kəsa", "də"]

ID_SENTENCES = [
    "saya makan nasi goreng", "kami makan-makan di rumah nenek",
    "anak-anak bermain di taman", "mereka jalan-jalan ke pasar",
    "ibu memasak di dapur", "kita makan bersama nanti malam",
    "dia suka makan buah", "saya mau makan sekarang",
    "teman-teman datang ke rumah", "hati-hati di jalan",
]
ID_SUBJECTS = ["saya", "kamu", "kami", "kita", "mereka", "dia", "ibu", "ayah",
               "anak-anak", "teman saya"]
ID_VERBS = ["makan", "minum", "membaca", "menulis", "melihat", "membeli",
            "mencari", "membawa", "suka", "mau"]
ID_OBJECTS = ["nasi", "buku", "air", "kopi", "rumah", "buah", "surat",
              "makan-makan", "baju", "ikan", "sayur"]
ID_EXTRAS = ["sekarang", "besok", "nanti", "lagi", "setiap hari",
             "di rumah", "di pasar", "bersama-sama", "pelan-pelan"]

HI_SENTENCES = [
    "मैं घर जा रहा हूँ", "आप कैसे हैं", "यह किताब अच्छी है",
    "हम खाना खा रहे हैं", "वह स्कूल जाती है", "आज मौसम अच्छा है",
    "मुझे पानी चाहिए", "बच्चे बाहर खेल रहे हैं", "कल हम बाजार जाएँगे",
    "मेरा नाम राम है",
]
HI_SUBJECTS = ["मैं", "हम", "आप", "वह", "वे", "बच्चे", "मेरी माँ", "राम"]
HI_VERBS = ["लिखता", "देखता", "खाता", "पीता", "चाहता", "लाता"]
HI_OBJECTS = ["किताब", "पानी", "खाना", "घर", "चिट्ठी", "फल", "दूध", "कागज"]
HI_EXTRAS = ["है", "हैं", "आज", "कल", "फिर", "हमेशा"]

GSW_SENTENCES = [
    "ich gang hüt in d stadt", "mir gönd am abig go ässe",
    "das isch e schöns huus", "chunnsch du morn au", "ich ha kei ziit",
    "d chind spiled im garte", "es isch würkli chalt hüt",
    "mir trinked es käfeli", "gseh mer üs spöter", "merci vilmal",
]
GSW_SUBJECTS = ["ich", "du", "mir", "si", "er", "d chind", "mini frau",
                "de lehrer"]
GSW_VERBS = ["gseh", "ha", "bring", "chauf", "lis", "schriib", "wott", "mag"]
GSW_OBJECTS = ["es buech", "es huus", "d zitig", "es käfeli", "e brief",
               "d lösig", "es äpfeli", "e schöns bild", "d müesli"]
GSW_EXTRAS = ["hüt", "morn", "am abig", "scho wieder", "jetzt", "nöd",
              "für di", "im büro"]

NL_SENTENCES = [
    "ik ga vandaag naar de stad", "die dag was heel mooi",
    "wij spreken nederlands thuis", "het café is op de hoek",
    "zij heeft één broer", "de kinderen spelen buiten",
    "dat is een goed idee", "ik heb geen tijd", "tot morgen",
    "die man werkt in het ziekenhuis",
]
NL_SUBJECTS = ["ik", "jij", "wij", "zij", "hij", "de kinderen", "mijn vrouw",
               "die man", "de leraar"]
NL_VERBS = ["zie", "heb", "breng", "koop", "lees", "schrijf", "wil", "zoek"]
NL_OBJECTS = ["een boek", "het huis", "de krant", "een brief", "die dag",
              "het antwoord", "een café", "de ideeën", "die taal"]
NL_EXTRAS = ["vandaag", "morgen", "vanavond", "altijd", "nu", "niet",
             "voor jou", "op het werk"]

FY_SENTENCES = [
    "ik gean hjoed nei de stêd", "dy dei wie hiel moai",
    "wy prate frysk thús", "it kafee is op de hoeke",
    "sy hat ien broer", "de bern boartsje bûten",
    "dat is in goed idee", "ik ha gjin tiid", "oant moarn",
    "dy man wurket yn it sikehûs", "in moaie dei yn fryslân",
]
FY_SUBJECTS = ["ik", "do", "wy", "sy", "hy", "de bern", "myn frou",
               "dy man", "de learaar"]
FY_VERBS = ["sjoch", "ha", "bring", "keapje", "lês", "skriuw", "wol", "siik"]
FY_OBJECTS = ["in boek", "it hûs", "de krante", "in brief", "dy dei",
              "it antwurd", "de taal", "in moaie dei", "it frysk"]
FY_EXTRAS = ["hjoed", "moarn", "jûn", "altyd", "no", "net", "foar dy",
             "op it wurk", "elke dei"]


def corpus(fixed, parts, seed, n):
  lines = list(fixed) + template_corpus(seed, *parts, n)
  return "\n".join(nfc(l) for l in lines) + "\n"


LATIN = "abcdefghijklmnopqrstuvwxyz"


def languages():
  out = {}

  out["en"] = dict(
      profile={"language_tag": "en", "name": "English",
               "scripts": [{"script": "Latn", "usage": "everyday"}],
               "inventory": cased_inventory("en", LATIN, "éè"),
               "casing": "cased", "leniency": 0.2,
               "reduplication_enabled": False},
      layout=grid_layout("en", "Latn", "qwerty", QWERTY,
                         {"e": ["é", "è", "ê", "ë"]}, digits=True),
      corpus=corpus(EN_SENTENCES, (EN_SUBJECTS, EN_VERBS, EN_OBJECTS,
                                   EN_EXTRAS), 11, 600))

  kr_letters = [c for c in LATIN if c not in "qvx"] + ["ə"]
  out["kr"] = dict(
      profile={"language_tag": "kr", "name": "Kanuri",
               "scripts": [{"script": "Latn", "usage": "everyday"}],
               "inventory": cased_inventory("kr", kr_letters),
               "casing": "cased", "leniency": 0.6,
               "reduplication_enabled": False},
      layout=grid_layout("kr", "Latn", "qwerty", QWERTY, digits=True,
                         extra_rows=()),
      corpus=corpus(KR_SENTENCES, (KR_SUBJECTS, KR_VERBS, KR_OBJECTS,
                                   KR_EXTRAS), 12, 300))
  # 'ə' is frequent enough in Kanuri text to earn its own key.
  kr_keys = out["kr"]["layout"]["pages"][0]["keys"]
  kr_keys.append({"id": "ə", "row": 1, "col": 9, "width": 0.1, "output": "ə",
                  "face": "ə", "shift": "Ə"})
  out["kr"]["layout"]["pages"][0]["row_offsets"][1] = 0.0

  ru_letters = "".join(RUSSIAN)
  out["ru"] = dict(
      profile={"language_tag": "ru", "name": "Russian",
               "scripts": [{"script": "Cyrl", "usage": "everyday"}],
               "inventory": cased_inventory("ru", ru_letters),
               "casing": "cased", "leniency": 0.2,
               "reduplication_enabled": False},
      layout=grid_layout("ru", "Cyrl", "script_native", RUSSIAN),
      corpus=corpus(RU_SENTENCES, (RU_SUBJECTS, RU_VERBS, RU_OBJECTS,
                                   RU_EXTRAS), 13, 400))

  out["sah"] = dict(
      profile={"language_tag": "sah", "name": "Yakut",
               "scripts": [{"script": "Cyrl", "usage": "everyday"}],
               "inventory": cased_inventory("sah", list(ru_letters) +
                                            YAKUT_EXTRA),
               "casing": "cased", "leniency": 0.5,
               "reduplication_enabled": False},
      layout=grid_layout("sah", "Cyrl", "script_native", RUSSIAN,
                         extra_rows=[YAKUT_EXTRA]),
      corpus=corpus(SAH_SENTENCES, (SAH_SUBJECTS, SAH_VERBS, SAH_OBJECTS,
                                    SAH_EXTRAS), 14, 300))

  out["id"] = dict(
      profile={"language_tag": "id", "name": "Indonesian",
               "scripts": [{"script": "Latn", "usage": "everyday"}],
               "inventory": cased_inventory("id", LATIN),
               "casing": "cased", "leniency": 0.3,
               "reduplication_enabled": True},
      layout=grid_layout("id", "Latn", "qwerty", QWERTY, digits=True),
      corpus=corpus(ID_SENTENCES, (ID_SUBJECTS, ID_VERBS, ID_OBJECTS,
                                   ID_EXTRAS), 15, 400))

  hi_inventory = {"language_tag": "hi",
                  "required": sorted(HI_VOWELS + HI_CONSONANTS + HI_SIGNS +
                                     HI_MODS),
                  "optional_loanword": []}
  hi_lines = corpus(HI_SENTENCES, (HI_SUBJECTS, HI_VERBS, HI_OBJECTS,
                                   HI_EXTRAS), 16, 300)
  out["hi"] = dict(
      profile={"language_tag": "hi", "name": "Hindi",
               "scripts": [{"script": "Deva", "usage": "everyday"}],
               "inventory": hi_inventory, "casing": "uncased",
               "leniency": 0.3, "reduplication_enabled": False},
      layout=hindi_layout(), corpus=hi_lines)

  gsw = grid_layout("gsw", "Latn", "qwertz",
                    ["qwertzuiopü", "asdfghjklöä", "yxcvbnm"])
  out["gsw"] = dict(
      profile={"language_tag": "gsw", "name": "Swiss German",
               "scripts": [{"script": "Latn", "usage": "everyday"}],
               "inventory": cased_inventory("gsw", LATIN + "äöü", "é"),
               "casing": "cased", "leniency": 0.7,
               "reduplication_enabled": False},
      layout=gsw,
      corpus=corpus(GSW_SENTENCES, (GSW_SUBJECTS, GSW_VERBS, GSW_OBJECTS,
                                    GSW_EXTRAS), 17, 300))

  nl_lp = {"e": ["é", "ë", "è", "ê"], "i": ["ï"], "o": ["ó", "ö"],
           "u": ["ü"], "a": ["á"]}
  out["nl"] = dict(
      profile={"language_tag": "nl", "name": "Dutch",
               "scripts": [{"script": "Latn", "usage": "everyday"}],
               "inventory": cased_inventory("nl", LATIN, "éëèêïóöüá"),
               "casing": "cased", "leniency": 0.2,
               "reduplication_enabled": False},
      layout=grid_layout("nl", "Latn", "qwerty", QWERTY, nl_lp, digits=True),
      corpus=corpus(NL_SENTENCES, (NL_SUBJECTS, NL_VERBS, NL_OBJECTS,
                                   NL_EXTRAS), 18, 400))

  fy_lp = {"a": ["â"], "e": ["ê", "é"], "o": ["ô"], "u": ["û", "ú"],
           "i": ["ï"]}
  out["fy"] = dict(
      profile={"language_tag": "fy", "name": "Frisian",
               "scripts": [{"script": "Latn", "usage": "everyday"}],
               "inventory": cased_inventory("fy", LATIN + "âêéôûú", "ï"),
               "casing": "cased", "leniency": 0.4,
               "reduplication_enabled": False},
      layout=grid_layout("fy", "Latn", "qwerty", QWERTY, fy_lp, digits=True),
      corpus=corpus(FY_SENTENCES, (FY_SUBJECTS, FY_VERBS, FY_OBJECTS,
                                   FY_EXTRAS), 19, 400))
  return out


# ---------------------------------------------------------------------------
# Registry

RECORDS = [
    # tag, autonym, exonym, script, speakers, confidence, factors
    ("en", "English", "English", "Latn", 1_500_000_000, "high",
     (3, 2, 2, True, 10, False, True)),
    ("kr", "Kanuri", "Kanuri", "Latn", 9_600_000, "low",
     (1, 1, 2, True, 4, False, False)),
    ("ru", "Русский", "Russian", "Cyrl", 255_000_000, "high",
     (3, 2, 1, True, 10, False, True)),
    ("sah", "Саха тыла", "Yakut", "Cyrl", 450_000, "medium",
     (2, 2, 1, True, 6, False, True)),
    ("id", "Bahasa Indonesia", "Indonesian", "Latn", 200_000_000, "medium",
     (3, 2, 2, True, 8, False, True)),
    ("hi", "हिन्दी", "Hindi", "Deva", 600_000_000, "medium",
     (3, 2, 2, True, 10, False, True)),
    ("gsw", "Schwiizertüütsch", "Swiss German", "Latn", 5_000_000, "medium",
     (3, 0, 1, True, 5, True, False)),
    ("nl", "Nederlands", "Dutch", "Latn", 24_000_000, "high",
     (3, 2, 1, True, 7, False, True)),
    ("fy", "Frysk", "Frisian", "Latn", 500_000, "medium",
     (2, 1, 1, True, 9, True, True)),
    ("sat", "ᱥᱟᱱᱛᱟᱲᱤ", "Santali", "Olck", 7_600_000, "low",
     (1, 1, 1, False, 3, False, True)),
]

SUBTASKS = ["inventory_defined", "layout_designed", "corpus_ready",
            "model_trained", "tested", "released"]

STATUS = {
    "en": ["done"] * 6,
    "ru": ["done"] * 6,
    "nl": ["done"] * 6,
    "id": ["done", "done", "done", "done", "in_progress", "todo"],
    "sah": ["done", "done", "in_progress", "todo", "todo", "todo"],
    "kr": ["done", "in_progress", "todo", "todo", "todo", "todo"],
    "hi": ["done", "done", "done", "in_progress", "todo", "todo"],
    "fy": ["done", "done", "in_progress", "todo", "todo", "todo"],
    "gsw": ["done", "in_progress", "todo", "todo", "todo", "todo"],
}

OWNERS = ["amara", "bolat", "chen", "dana", "erik", "farah"]


def registry(root):
  rec_dir = root / "registry" / "records"
  st_dir = root / "registry" / "status"
  rec_dir.mkdir(parents=True, exist_ok=True)
  st_dir.mkdir(parents=True, exist_ok=True)
  for i, (tag, auto, exo, script, speakers, conf, f) in enumerate(RECORDS):
    online, pubs, trend, i18n, requests, alt, official = f
    rec = {"language_tag": tag, "autonym": auto, "exonym": exo,
           "scripts": [{"script": script, "usage": "everyday"}],
           "speaker_estimate": speakers, "speaker_confidence": conf,
           "factors": {"online_evidence": online,
                       "formal_publications": pubs,
                       "smartphone_trend": trend, "i18n_ready": i18n,
                       "feature_requests": requests,
                       "usable_alternative_exists": alt,
                       "official_status": official}}
    write_json(rec_dir / f"{tag}.json", rec)
    if tag not in STATUS:
      continue
    subtasks = {}
    for j, (name, state) in enumerate(zip(SUBTASKS, STATUS[tag])):
      entry = {"status": state,
               "doc": f"docs/languages/{tag}/{name}.md"}
      if state == "in_progress":
        entry["owner"] = OWNERS[(i + j) % len(OWNERS)]
        entry["issue"] = f"#{100 + 10 * i + j}"
      subtasks[name] = entry
    write_json(st_dir / f"{tag}.json",
               {"language_tag": tag, "subtasks": subtasks})


def write_json(path, obj):
  path.parent.mkdir(parents=True, exist_ok=True)
  path.write_text(json.dumps(obj, ensure_ascii=False, indent=1) + "\n",
                  encoding="utf-8")


def main():
  parser = argparse.ArgumentParser(description=__doc__)
  parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve()
                                           .parent.parent / "data"))
  args = parser.parse_args()
  root = pathlib.Path(args.out)
  for tag, assets in languages().items():
    d = root / "languages" / tag
    write_json(d / "profile.json", assets["profile"])
    write_json(d / "layout.json", assets["layout"])
    (d / "corpus.txt").write_text(assets["corpus"], encoding="utf-8")
  registry(root)


if __name__ == "__main__":
  main()
