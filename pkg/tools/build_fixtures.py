#!/usr/bin/env python3
"""Regenerate the bundled fixture corpus: 20 recipe pages across three
fictional blog domains plus the offline url->file map.

Six pages are deliberately defective to exercise the curation loop
(multi-word entity failure, cookware-as-ingredient, unknown term, cuisine
mismatch, restriction violation); the rest are clean.

Run from the repo root: python tools/build_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

MASALA = """\
<!DOCTYPE html>
<html>
<head>
<title>{title}</title>
<meta name="publish-date" content="{published}">
</head>
<body>
<header><nav>Home | Recipes | About</nav></header>
<article>
<h1 class="recipe-title">{name}</h1>
<div class="recipe-card">
  <div class="recipe-meta">
    <span class="recipe-category">{category}</span>
    <span class="recipe-cuisine">{cuisine}</span>
    <span class="recipe-servings">{servings}</span>
{extra_meta}  </div>
  <ul class="recipe-ingredients">
{ingredients}  </ul>
  <div class="recipe-instructions"><p>{instructions}</p></div>
{nutrition}</div>
<div class="post-content">
{prose}</div>
</article>
<footer>An example food journal.</footer>
</body>
</html>
"""

SPICETRAIL = """\
<!DOCTYPE html>
<html>
<head>
<title>{title}</title>
<meta name="post-date" content="{published}">
</head>
<body>
<main>
<section class="card-box">
  <h2 class="card-title">{name}</h2>
  <p><span class="card-type">{category}</span> &middot;
     <span class="card-region">{cuisine}</span> &middot;
     <span class="card-serves">{servings}</span></p>
{extra_meta}  <div class="card-ingredients">
    <ul>
{ingredients}    </ul>
  </div>
  <div class="card-method"><p>{instructions}</p></div>
{nutrition}</section>
<div class="story">
{prose}</div>
</main>
</body>
</html>
"""

HOMEPLATES = """\
<!DOCTYPE html>
<html>
<head>
<title>{title}</title>
<meta name="publish-date" content="{published}">
</head>
<body>
<div class="wrapper">
<div class="hrecipe">
  <span class="fn">{name}</span>
  <span class="course">{category}</span>
  <span class="style">{cuisine}</span>
  <span class="yield">{servings}</span>
{extra_meta}  <ul class="ingredients">
{ingredients}  </ul>
  <div class="preparation"><p>{instructions}</p></div>
</div>
<div class="notes">
{prose}</div>
</div>
</body>
</html>
"""

TEMPLATES = {
    "masalajournal.example": MASALA,
    "spicetrail.example": SPICETRAIL,
    "homeplates.example": HOMEPLATES,
}

META_SPAN = {
    "masalajournal.example": ("recipe-diet", "recipe-pairing"),
    "spicetrail.example": ("card-diet", None),
    "homeplates.example": ("diet", None),
}


def page(domain, slug, name, category, cuisine, servings, ingredients, instructions,
         prose, published, title=None, diet=None, pairing=None, nutrition=None):
    return {
        "domain": domain,
        "slug": slug,
        "url": f"https://{domain}/recipes/{slug}/",
        "name": name,
        "title": title or f"{name} Recipe - {domain.split('.')[0]}",
        "category": category,
        "cuisine": cuisine,
        "servings": servings,
        "diet": diet or [],
        "pairing": pairing or [],
        "ingredients": ingredients,
        "instructions": instructions,
        "prose": prose,
        "published": published,
        "nutrition": nutrition or [],
    }


PAGES = [
    # -- designed defect: none (scaling acceptance fixture) ------------------
    page(
        "masalajournal.example", "chicken-chettinad", "Chicken Chettinad",
        "curry", "Chettinad", 4,
        ["1 kg chicken", "6 pieces cardamom", "2 onions", "2 tomatoes",
         "1 tsp turmeric", "2 tbsp vegetable oil", "salt to taste"],
        "Marinate the chicken, roast the spices, then simmer everything in a "
        "kadai until the gravy thickens.",
        ["<p>This fiery Chettinad curry serves 4 and rewards patience. To get "
         "started you need chicken, onion, tomato and turmeric.</p>",
         "<p>Roast the whole spices first, then simmer the curry slowly in a "
         "kadai. The gravy should coat the back of a spoon.</p>"],
        "2024-02-11T08:30:00+05:30",
        nutrition=[("Calories", "520 kcal"), ("Protein", "32 g"),
                   ("Fat", "28 g"), ("Carbohydrate", "12 g")],
    ),
    # -- designed defects: multi-word failure + recipe-as-ingredient ---------
    page(
        "masalajournal.example", "pudina-chutney-sandwich", "Pudina Chutney Sandwich",
        "sandwich", "Indian", 2,
        ["4 slices bread", "2 tbsp pudina chutney", "1 tbsp butter", "1 cucumber"],
        "Butter the bread, spread the chutney, layer the cucumber and grill "
        "on a tawa until crisp.",
        ["<p>A tea-time favourite. For this sandwich you need pudina chutney, "
         "butter, cucumber and bread.</p>",
         "<p>Grill it on a hot tawa and serve immediately, while the outside "
         "is still crunchy.</p>"],
        "2024-03-02T10:00:00+05:30",
    ),
    # -- designed defect: cookware extracted as ingredient -------------------
    page(
        "spicetrail.example", "kadai-paneer", "Kadai Paneer",
        "curry", "North Indian", 3,
        ["250 g paneer", "3 tomatoes", "2 tbsp butter", "1 tsp garam masala",
         "1 tsp red chili powder"],
        "Saute the tomatoes hard, add the spices, then fold in the paneer "
        "cubes and finish with butter.",
        ["<p>A dhaba classic from North Indian kitchens. To make it at home "
         "you need paneer, tomatoes, butter and a kadahi.</p>",
         "<p>Keep the flame high while you saute; the char is the point.</p>"],
        "2024-01-19T09:15:00+05:30",
        nutrition=[("Calories", "390 kcal"), ("Protein", "18 g"), ("Fat", "30 g")],
    ),
    # -- designed defect: Jain label with a bulb vegetable -------------------
    page(
        "spicetrail.example", "jain-tamatar-sabzi", "Jain Tamatar Sabzi",
        "curry", "West Indian", 2,
        ["4 tomatoes", "1 onion", "1 tsp cumin", "2 tbsp vegetable oil",
         "salt to taste"],
        "Temper the cumin in oil, add the tomatoes and simmer to a soft "
        "sabzi.",
        ["<p>Listed as a Jain recipe by the blog, though the ingredient list "
         "tells another story. For it you need tomatoes, onion and cumin.</p>",
         "<p>Simmer gently; the sabzi should stay chunky.</p>"],
        "2024-04-05T07:45:00+05:30",
        diet=["Jain"],
    ),
    # -- designed defect: unknown vocabulary term -----------------------------
    page(
        "homeplates.example", "kokum-kadhi", "Kokum Kadhi",
        "soup", "West Indian", 4,
        ["2 cups yogurt", "1 tbsp chickpea flour", "1 tsp mustard seeds",
         "salt to taste"],
        "Whisk the yogurt with the flour, warm it gently and finish with a "
        "mustard-seed tempering.",
        ["<p>The tang in this coastal kadhi comes from a souring fruit few "
         "blogs bother to explain. For the base you need yogurt and kokum.</p>",
         "<p>Never boil it hard or the kadhi will split. Serve it warm over "
         "steamed rice.</p>"],
        "2024-05-21T18:20:00+05:30",
    ),
    # -- designed defect: card/LLM cuisine mismatch ---------------------------
    page(
        "homeplates.example", "tawa-paratha", "Tawa Paratha",
        "flatbread", "North Indian", 4,
        ["2 cups wheat flour", "2 tbsp ghee", "salt to taste"],
        "Knead a soft dough, rest it, roll out the parathas and cook them on "
        "a hot tawa with ghee.",
        ["<p>Our version is inspired by a South Indian street snack, but the "
         "technique is pure home cooking. For the dough you need atta and "
         "ghee.</p>",
         "<p>Knead well and rest the dough; a soft paratha is earned.</p>"],
        "2024-02-27T06:00:00+05:30",
    ),
    # -- clean pages ----------------------------------------------------------
    page(
        "masalajournal.example", "lucknowi-chicken-biryani", "Lucknowi Chicken Biryani",
        "rice dish", "Awadhi", 6,
        ["1 kg chicken", "3 cups basmati rice", "2 onions", "1 cup yogurt",
         "2 tbsp ghee", "1 pinch saffron", "salt to taste"],
        "Layer the marinated chicken with parboiled rice, seal the handi and "
        "dum-cook on the lowest flame.",
        ["<p>The Awadhi table prizes restraint. This biryani serves 6 and "
         "for it you need chicken, basmati and yogurt.</p>",
         "<p>Seal the handi with dough and dum-cook; steam does the work.</p>"],
        "2024-01-05T12:00:00+05:30",
        nutrition=[("Calories", "610 kcal"), ("Protein", "35 g"),
                   ("Fat", "22 g"), ("Carbohydrate", "64 g")],
    ),
    page(
        "spicetrail.example", "mutton-donne-biryani", "Mutton Donne Biryani",
        "rice dish", "Karnataka", 4,
        ["750 g mutton", "2 cups basmati rice", "2 onions", "1 cup coriander",
         "2 tbsp ghee", "salt to taste"],
        "Pressure-cook the mutton, grind the green masala, then finish the "
        "rice and meat together over a low flame.",
        ["<p>A Karnataka classic served in palm-leaf cups. For the green "
         "masala you need coriander, onion and mutton stock.</p>",
         "<p>Pressure-cook the meat first; the rice finishes in its broth.</p>"],
        "2024-03-18T13:40:00+05:30",
    ),
    page(
        "masalajournal.example", "dal-tadka", "Dal Tadka",
        "curry", "North Indian", 4,
        ["1 bowl toor dal", "1 tsp हल्दी", "2 tomatoes",
         "1 onion", "1 tbsp ghee", "1 tsp cumin", "salt to taste"],
        "Pressure-cook the dal soft, then pour over a tempering of ghee, "
        "cumin and onion.",
        ["<p>Comfort in a bowl; it serves 4 on most days. For the tempering "
         "you need ghee, cumin and onion.</p>",
         "<p>The tadka goes in sizzling. Do not skip the final simmer.</p>"],
        "2024-02-01T19:30:00+05:30",
        nutrition=[("Calories", "280 kcal"), ("Protein", "14 g"),
                   ("Fat", "9 g"), ("Carbohydrate", "38 g")],
    ),
    page(
        "homeplates.example", "steamed-rice", "Steamed Rice",
        "rice dish", "Indian", 2,
        ["1 cup raw rice", "salt to taste"],
        "Rinse the rice until the water runs clear, then steam it covered "
        "until every grain stands apart.",
        ["<p>The quiet half of every thali; it serves 2 generously and asks "
         "only for good rice.</p>",
         "<p>Steam it covered and rest it five minutes before serving.</p>"],
        "2024-01-10T11:05:00+05:30",
    ),
    page(
        "spicetrail.example", "vegetable-pulao", "Vegetable Pulao",
        "rice dish", "Indian", 3,
        ["2 cups basmati rice", "1 cup peas", "2 carrots", "1 onion",
         "2 tbsp ghee", "1 tsp cumin", "salt to taste"],
        "Saute the whole spices, add the vegetables and rice, and simmer "
        "covered until fluffy.",
        ["<p>A weeknight pulao that serves 3. Along with rice you need peas, "
         "carrots and onion.</p>",
         "<p>Saute the cumin in ghee before anything else touches the pot.</p>"],
        "2024-04-12T12:25:00+05:30",
    ),
    page(
        "masalajournal.example", "masala-chai", "Masala Chai",
        "beverage", "Indian", 2,
        ["2 cups milk", "2 tsp tea leaves", "2 tsp sugar", "1 piece ginger",
         "2 pieces cardamom"],
        "Crush the spices, boil them with the tea leaves and milk, and "
        "simmer until the colour deepens.",
        ["<p>The house blend serves 2. For a proper cup you need milk, "
         "ginger and cardamom.</p>",
         "<p>Let it simmer; weak chai helps nobody.</p>"],
        "2024-01-25T07:10:00+05:30",
    ),
    page(
        "homeplates.example", "aloo-paratha", "Aloo Paratha",
        "flatbread", "Punjabi", 3,
        ["2 cups wheat flour", "3 potatoes", "1 onion", "1 tsp garam masala",
         "2 tbsp ghee", "salt to taste"],
        "Stuff the spiced potato mash into dough rounds, roll gently and "
        "roast on a tawa with ghee.",
        ["<p>A Punjabi breakfast that serves 3. For the stuffing you need "
         "potatoes, onion and ghee.</p>",
         "<p>Roast each paratha on the tawa until freckled brown.</p>"],
        "2024-02-14T08:00:00+05:30",
        nutrition=[("Calories", "450 kcal"), ("Protein", "10 g"),
                   ("Fat", "18 g"), ("Carbohydrate", "62 g")],
    ),
    page(
        "masalajournal.example", "palak-paneer", "Palak Paneer",
        "curry", "North Indian", 4,
        ["500 g spinach", "250 g paneer", "1 onion", "2 cloves garlic",
         "1 tbsp butter", "salt to taste"],
        "Blanch and puree the spinach, make the base gravy, then fold in the "
        "paneer cubes.",
        ["<p>Green, gentle, reliable; it serves 4. Beyond the basics you "
         "need spinach, paneer and garlic.</p>",
         "<p>Blanch the leaves briefly to keep the colour bright.</p>"],
        "2024-03-09T17:55:00+05:30",
        nutrition=[("Calories", "340 kcal"), ("Protein", "16 g"), ("Fat", "26 g")],
    ),
    page(
        "spicetrail.example", "chana-masala", "Chana Masala",
        "curry", "Punjabi", 4,
        ["2 cups chickpeas", "2 onions", "3 tomatoes", "1 tsp garam masala",
         "1 tsp cumin", "2 tbsp vegetable oil", "salt to taste"],
        "Soak the chickpeas overnight, pressure-cook until soft, then simmer "
        "in the onion-tomato masala.",
        ["<p>A Punjabi staple that serves 4. For the gravy you need chana, "
         "onion and tomato.</p>",
         "<p>Pressure-cook the chana until it crushes between two fingers.</p>"],
        "2024-04-22T14:10:00+05:30",
    ),
    page(
        "homeplates.example", "baingan-bharta", "Baingan Bharta",
        "bharta", "North Indian", 3,
        ["2 eggplants", "2 tomatoes", "1 onion", "2 cloves garlic",
         "2 tbsp mustard oil", "salt to taste"],
        "Char the eggplants whole over a flame, peel, mash and cook down "
        "with the masala.",
        ["<p>Smoke is the main ingredient; the dish serves 3. Otherwise you "
         "need eggplant, tomato and garlic.</p>",
         "<p>Char the skins until they blister all over, then grill a "
         "moment longer.</p>"],
        "2024-05-02T16:35:00+05:30",
    ),
    page(
        "masalajournal.example", "curd-rice", "Curd Rice",
        "rice dish", "South Indian", 2,
        ["2 cups raw rice", "1 cup yogurt", "1 tsp mustard seeds",
         "1 sprig curry leaves", "salt to taste"],
        "Cook the rice soft, cool it, fold in the yogurt and pour over a "
        "mustard-seed tempering.",
        ["<p>The South Indian table ends here; it serves 2. You need rice "
         "and yogurt.</p>",
         "<p>Cool the rice before the yogurt goes in, or it will split.</p>"],
        "2024-03-30T13:00:00+05:30",
        pairing=["papadum"],
    ),
    page(
        "spicetrail.example", "tomato-rasam", "Tomato Rasam",
        "soup", "South Indian", 4,
        ["4 tomatoes", "1 tbsp tamarind", "1 tsp black pepper", "1 tsp cumin",
         "1 sprig curry leaves", "salt to taste"],
        "Crush the tomatoes into the tamarind water, season, boil briefly "
        "and finish with a tempering.",
        ["<p>A South Indian restorative that serves 4. At minimum you need "
         "tomatoes, tamarind and pepper.</p>",
         "<p>Boil only until the rasam foams once, then pull it off.</p>"],
        "2024-05-11T19:45:00+05:30",
    ),
    page(
        "homeplates.example", "besan-cheela", "Besan Cheela",
        "breakfast", "North Indian", 2,
        ["1 cup chickpea flour", "1 onion", "2 green chilies", "1 tsp cumin",
         "2 tbsp vegetable oil", "salt to taste"],
        "Whisk a lump-free batter, ladle onto a hot tawa and cook both sides "
        "until lacy and golden.",
        ["<p>A five-minute breakfast that serves 2. For the batter you need "
         "besan, onion and cumin.</p>",
         "<p>The tawa must be properly hot before the first ladleful.</p>"],
        "2024-01-30T06:50:00+05:30",
    ),
    page(
        "masalajournal.example", "coconut-chutney", "Coconut Chutney",
        "condiment", "South Indian", 4,
        ["1 cup coconut", "2 green chilies", "1 piece ginger",
         "1 tsp mustard seeds", "1 sprig curry leaves", "salt to taste"],
        "Grind the coconut with chilies and ginger, then pour over the "
        "tempering of mustard seeds and curry leaves.",
        ["<p>The default South Indian companion; serves 4 alongside tiffin. "
         "You need coconut and ginger.</p>",
         "<p>Grind coarse, not smooth; chutney should have some tooth.</p>"],
        "2024-02-20T09:40:00+05:30",
        pairing=["sambar"],
    ),
]


def render(p: dict) -> str:
    template = TEMPLATES[p["domain"]]
    diet_class, pairing_class = META_SPAN[p["domain"]]
    extra = ""
    for label in p["diet"]:
        extra += f'    <span class="{diet_class}">{label}</span>\n'
    if pairing_class:
        for label in p["pairing"]:
            extra += f'    <span class="{pairing_class}">{label}</span>\n'
    ingredients = "".join(f"    <li>{line}</li>\n" for line in p["ingredients"])
    nutrition = ""
    if p["nutrition"]:
        rows = "".join(
            f"    <tr><td>{label}</td><td>{amount}</td></tr>\n"
            for label, amount in p["nutrition"]
        )
        if p["domain"] == "masalajournal.example":
            nutrition = f'  <table class="recipe-nutrition">\n{rows}  </table>\n'
        elif p["domain"] == "spicetrail.example":
            nutrition = f'  <div class="card-nutrition"><table>\n{rows}  </table></div>\n'
    prose = "".join(f"  {para}\n" for para in p["prose"])
    return template.format(
        title=p["title"], published=p["published"], name=p["name"],
        category=p["category"], cuisine=p["cuisine"], servings=p["servings"],
        extra_meta=extra, ingredients=ingredients, instructions=p["instructions"],
        nutrition=nutrition, prose=prose,
    )


def main() -> None:
    pages_dir = FIXTURE_DIR / "pages"
    pages_dir.mkdir(parents=True, exist_ok=True)
    url_map = {}
    seeds = []
    for p in PAGES:
        filename = f"{p['slug']}.html"
        (pages_dir / filename).write_text(render(p), encoding="utf-8")
        url_map[p["url"]] = {
            "file": f"pages/{filename}",
            "recipe_name": p["name"],
            "recipe_category": p["category"],
        }
        seeds.append(p["url"])
    (FIXTURE_DIR / "urls.json").write_text(
        json.dumps(url_map, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    (FIXTURE_DIR / "seed_urls.txt").write_text("\n".join(seeds) + "\n", encoding="utf-8")
    print(f"wrote {len(PAGES)} pages")


if __name__ == "__main__":
    main()
