var s = new Slick('#carousel');
console.log(s.slickAdd('a'));
console.log(s.addSlide('b', 0, true));
console.log(s.slides.join(','));
console.log(typeof s.addSlide, typeof s.slickAdd);
